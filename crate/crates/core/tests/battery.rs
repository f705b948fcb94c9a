use prodesc_core::catalog::{battery_groups, battery_modules, cyclic_named};
use prodesc_core::descent::{constant_expectation, descent_e2, CellValue, GChainComplex, GComplexTower};
use prodesc_core::gmod::{
    cochain_complex, complex_cohomology, finite_cohomology, gamma, CochainModel, DiscreteGModule,
};
use prodesc_core::groups::ProfiniteTower;
use prodesc_core::FgAbGroup;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `H^s(Z/n; A)` for a trivial cyclic or free `A`, from the 2-periodic resolution.
fn cyclic_oracle(n: i64, m: Option<i64>, s: usize) -> FgAbGroup {
    match (m, s) {
        (None, 0) => FgAbGroup::free(1),
        (None, s) if s % 2 == 1 => FgAbGroup::zero(),
        (None, _) => FgAbGroup::cyclic(n),
        (Some(m), 0) => FgAbGroup::cyclic(m),
        (Some(m), _) => FgAbGroup::cyclic(gcd(n, m)),
    }
}

#[test]
fn cyclic_groups_match_the_periodic_resolution() {
    for n in 2..=4 {
        let q = cyclic_named(n as usize).group;
        for m in [None, Some(2), Some(3), Some(4), Some(6)] {
            let a = m.map_or(FgAbGroup::free(1), FgAbGroup::cyclic);
            let module = DiscreteGModule::trivial(&q, 0, a);
            for s in 0..=3 {
                assert_eq!(
                    finite_cohomology(&q, &module, s).unwrap(),
                    cyclic_oracle(n, m, s),
                    "n={} m={:?} s={}",
                    n,
                    m,
                    s
                );
            }
        }
    }
}

#[test]
fn three_models_agree_on_small_groups() {
    for ng in battery_groups().into_iter().filter(|g| g.group.order() <= 4) {
        for nm in battery_modules(&ng, 0).unwrap() {
            let cs: Vec<_> = [CochainModel::Inhomogeneous, CochainModel::HomogeneousFixed, CochainModel::GammaFixed]
                .iter()
                .map(|&model| cochain_complex(model, &ng.group, &nm.module, 3).unwrap())
                .collect();
            for s in 0..=2 {
                let hs: Vec<_> = cs.iter().map(|c| complex_cohomology(c, s).unwrap()).collect();
                assert!(hs.windows(2).all(|w| w[0] == w[1]), "{} {} s={}: {:?}", ng.name, nm.name, s, hs);
            }
        }
    }
}

#[test]
fn coinduced_modules_are_acyclic() {
    for ng in battery_groups().into_iter().filter(|g| g.group.order() <= 6) {
        for nm in battery_modules(&ng, 0).unwrap() {
            let gm = gamma(&ng.group, &nm.module).unwrap();
            assert_eq!(finite_cohomology(&ng.group, &gm, 0).unwrap(), *nm.module.underlying());
            for s in 1..=2 {
                assert!(finite_cohomology(&ng.group, &gm, s).unwrap().is_trivial(), "{} {} s={}", ng.name, nm.name, s);
            }
        }
    }
}

#[test]
fn constant_towers_collapse() {
    for ng in battery_groups().into_iter().filter(|g| g.group.order() <= 4) {
        let g = ProfiniteTower::finite(ng.group.clone());
        for nm in battery_modules(&ng, 0).unwrap() {
            let x = GChainComplex::concentrated(nm.module.clone(), 0);
            let page = descent_e2(&g, &GComplexTower::constant(&g, x.clone()).unwrap(), 2, (-1, 0), 3, 0, 12).unwrap();
            for c in &page.cells {
                let expected = constant_expectation(&g, &x, c.s, c.t, 0).unwrap();
                assert_eq!(c.value, CellValue::Group(expected), "{} {} ({}, {})", ng.name, nm.name, c.s, c.t);
            }
        }
    }
}
