//! Built-in algebras, stored in the algebra file format.

use crate::formats::{parse_algebra, AlgebraInputError};
use crate::liealg::LieAlgebra;

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "heisenberg",
        summary: "3-dimensional Heisenberg algebra",
        text: "\
# two-step nilpotent; its own exponential radical is trivial
name: heisenberg
basis: x y z
[x,y] = z
",
    },
    CatalogEntry {
        name: "sol",
        summary: "R acting on R^2 by diag(1,-1)",
        text: "\
name: sol
basis: t x y
[t,x] = x
[t,y] = -y
",
    },
    CatalogEntry {
        name: "rotation",
        summary: "R acting on R^2 by rotations (universal cover of the Euclidean motion group)",
        text: "\
name: rotation
basis: t x y
[t,x] = y
[t,y] = -x
",
    },
    CatalogEntry {
        name: "weakly_triangulable",
        summary: "R acting on R^2 by [[1,-1],[1,1]]: weakly triangulable, not triangulable",
        text: "\
# ad t has eigenvalues 1 ± i: the x,y plane is exponentially distorted,
# but the action is not real-triangular
name: weakly_triangulable
basis: t x y
[t,x] = x + y
[t,y] = -x + y
",
    },
    CatalogEntry {
        name: "twisted_heisenberg_pair",
        summary: "(R ⋉ H3) × H3 modulo the diagonal center",
        text: "\
# Quotient of (R ⋉ H3) × H3 by the diagonal of the two centers.  R acts on
# the left copy of H3 through D = [[1,2],[2,-1]], a multiple of the log of
# the hyperbolic matrix [[2,1],[1,1]]; the action is trivial on the common
# center z.
name: twisted_heisenberg_pair
basis: t x1 y1 z x2 y2
[t,x1] = x1 + 2 y1
[t,y1] = 2 x1 - y1
[x1,y1] = z
[x2,y2] = z
",
    },
    CatalogEntry {
        name: "heisenberg_on_heisenberg",
        summary: "H3' ⋉ H3 with x' acting hyperbolically and shared center",
        text: "\
# Semidirect product H3' ⋉ H3 with the two centers identified: x' acts on
# (x1, y1) through [[1,2],[2,-1]], y' acts trivially.
name: heisenberg_on_heisenberg
basis: xp yp x1 y1 z
[xp,yp] = z
[x1,y1] = z
[xp,x1] = x1 + 2 y1
[xp,y1] = 2 x1 - y1
",
    },
    CatalogEntry {
        name: "sl2_annotated",
        summary: "sl2(R) with Levi data for the linear group (real rank 1, compact center)",
        text: "\
name: sl2_annotated
basis: h e f
[h,e] = 2 e
[h,f] = -2 f
[e,f] = h
levi_noncompact: h ; e ; f
levi_georank: 1 0
",
    },
    CatalogEntry {
        name: "sl2_universal",
        summary: "sl2(R) with Levi data for the universal cover (center of rational rank 1)",
        text: "\
name: sl2_universal
basis: h e f
[h,e] = 2 e
[h,f] = -2 f
[e,f] = h
levi_noncompact: h ; e ; f
levi_georank: 1 1
",
    },
    CatalogEntry {
        name: "heisenberg_by_sol",
        summary: "H3 with one generator acting hyperbolically on a plane; quotient by the radical is H3",
        text: "\
# a,b,c span a Heisenberg algebra; a also acts on (x, y) by diag(1,-1).
# The exponential radical is span{x, y} and the quotient is H3, whose
# nilshadow is not abelian.
name: heisenberg_by_sol
basis: a b c x y
[a,b] = c
[a,x] = x
[a,y] = -y
",
    },
    CatalogEntry {
        name: "dilation_heisenberg",
        summary: "R acting on H3 by the dilation diag(1,1,2)",
        text: "\
name: dilation_heisenberg
basis: t x y z
[t,x] = x
[t,y] = y
[t,z] = 2 z
[x,y] = z
",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

/// Parse a catalog algebra. Catalog texts are fixed, so failure is a bug.
pub fn load(name: &str) -> Option<LieAlgebra> {
    entry(name).map(|e| match parse_algebra(e.text) {
        Ok(g) => g,
        Err(AlgebraInputError::Parse(p)) => panic!("catalog entry {name}: {p}"),
        Err(AlgebraInputError::Lie(l)) => panic!("catalog entry {name}: {l}"),
    })
}
