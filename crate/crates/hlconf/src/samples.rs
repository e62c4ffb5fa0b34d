//! Small algebras used throughout the tests and the shipped definition files.

use crate::poly::{parse_poly, rat, MultiPoly};
use crate::structure::{current_algebra, ConformalAlgebra, FiniteAlgebra, PdMap, ProductTable};

/// The Virasoro conformal algebra: `[L_λ L] = (∂+2λ)L`, α = id.
pub fn virasoro() -> ConformalAlgebra {
    let mut t = ProductTable::zero(1, 1, 1);
    t.set(0, 0, vec![parse_poly("D + 2*x").unwrap()]).unwrap();
    ConformalAlgebra::new("virasoro", vec!["L".into()], t, PdMap::identity(1)).unwrap()
}

/// The 2-dimensional Leibniz algebra with `[e2, e2] = e1`, twist = id.
pub fn leibniz2_finite() -> FiniteAlgebra {
    let mut c = vec![vec![vec![rat(0); 2]; 2]; 2];
    c[1][1][0] = rat(1);
    FiniteAlgebra::new(
        vec!["e1".into(), "e2".into()],
        c,
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
    )
    .unwrap()
}

/// Current algebra of [`leibniz2_finite`].
pub fn cur_leibniz2() -> ConformalAlgebra {
    current_algebra("cur_leibniz2", &leibniz2_finite())
}

/// On [`cur_leibniz2`]: `N e1 = a e1`, `N e2 = b(∂) e1 + a e2`. Nijenhuis for
/// every `a` and every `b`.
pub fn cur_nijenhuis(a: i64, b: &str) -> PdMap {
    let a = MultiPoly::int(a);
    PdMap::from_rows(vec![
        vec![a.clone(), parse_poly(b).unwrap()],
        vec![MultiPoly::zero(), a],
    ])
    .unwrap()
}
