use prodesc_core::fgab::{are_isomorphic, cokernel, homology_at, homology_group_at, kernel};
use prodesc_core::gmod::power_map;
use prodesc_core::smith::smith_normal_form;
use prodesc_core::{FgAbGroup, Homomorphism, Int, Matrix};
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for j in 0..n {
        let minor: Vec<Vec<i128>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

fn dense(m: &Matrix) -> Vec<Vec<i128>> {
    m.to_dense_rows().iter().map(|r| r.iter().map(|v| v.to_i64().unwrap() as i128).collect()).collect()
}

fn all_elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..o).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn apply(rows: &[Vec<i64>], x: &[i64], orders: &[i64]) -> Vec<i64> {
    rows.iter().zip(orders).map(|(r, &o)| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(o)).collect()
}

fn order_of(g: &FgAbGroup) -> i64 {
    g.order().unwrap().to_i64().unwrap()
}

/// A well-defined homomorphism `⊕Z/src → ⊕Z/tgt`, from raw entries.
fn finite_hom(src: &[i64], tgt: &[i64], raw: &[i64]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0; src.len()]; tgt.len()];
    for i in 0..tgt.len() {
        for j in 0..src.len() {
            let step = tgt[i] / gcd(tgt[i], src[j]);
            rows[i][j] = (raw[i * src.len() + j] * step).rem_euclid(tgt[i]);
        }
    }
    rows
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn group(orders: &[i64]) -> FgAbGroup {
    FgAbGroup::from_orders(&orders.iter().map(|&o| Int::from(o)).collect::<Vec<_>>())
}

/// Canonical generators of `⊕Z/o` in the order given, when already canonical.
fn is_chain(orders: &[i64]) -> bool {
    orders.windows(2).all(|w| w[1] % w[0] == 0) && orders.iter().all(|&o| o >= 2)
}

fn chain() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![2i64, 3, 4, 6]), 0..3)
        .prop_map(|mut v| {
            v.sort();
            v
        })
        .prop_filter("divisibility chain", |v| is_chain(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_invariants(rows in 0usize..6, cols in 0usize..6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
        let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
        let m = if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_i64_rows(&refs) };
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(det(&dense(&s.u)).abs(), 1);
        prop_assert_eq!(det(&dense(&s.v)).abs(), 1);
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        for x in &d {
            prop_assert!(!x.is_negative());
        }
    }

    #[test]
    fn kernel_and_cokernel_orders(src in chain(), tgt in chain(), raw in prop::collection::vec(0i64..12, 9)) {
        let rows = finite_hom(&src, &tgt, &raw);
        let (a, b) = (group(&src), group(&tgt));
        let m = if tgt.is_empty() { Matrix::zeros(0, src.len()) } else {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Matrix::from_i64_rows(&refs)
        };
        let h = Homomorphism::new(a, b, m).unwrap();
        let elems = all_elements(&src);
        let ker = elems.iter().filter(|x| apply(&rows, x, &tgt).iter().all(|&v| v == 0)).count() as i64;
        let mut images: Vec<Vec<i64>> = elems.iter().map(|x| apply(&rows, x, &tgt)).collect();
        images.sort();
        images.dedup();
        let tgt_order: i64 = tgt.iter().product();
        let (k, incl) = kernel(&h).unwrap();
        prop_assert_eq!(order_of(&k), ker);
        prop_assert!(incl.then(&h).unwrap().is_zero());
        prop_assert!(incl.is_injective());
        let (c, proj) = cokernel(&h).unwrap();
        prop_assert_eq!(order_of(&c), tgt_order / images.len() as i64);
        prop_assert!(h.then(&proj).unwrap().is_zero());
        prop_assert!(proj.is_surjective());
    }

    #[test]
    fn free_kernel_rank(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-4i64..=4, 16)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
        let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_i64_rows(&refs);
        let rank = smith_normal_form(&m).diagonal().iter().filter(|d| !d.is_zero()).count();
        let h = Homomorphism::new(FgAbGroup::free(cols), FgAbGroup::free(rows), m).unwrap();
        let (k, _) = kernel(&h).unwrap();
        prop_assert_eq!(k.rank() + rank, cols);
        prop_assert!(k.torsion().is_empty());
    }

    #[test]
    fn homology_orders(a in chain(), b in chain(), c in chain(), raw in prop::collection::vec(0i64..12, 9)) {
        // d_out arbitrary, d_in built to land in ker(d_out) by enumeration
        let rows_out = finite_hom(&b, &c, &raw);
        let elems = all_elements(&b);
        let cycles: Vec<Vec<i64>> = elems.iter().filter(|x| apply(&rows_out, x, &c).iter().all(|&v| v == 0)).cloned().collect();
        // map each generator of A to some cycle whose order divides the generator's order
        let mut cols_in = Vec::new();
        for (j, &o) in a.iter().enumerate() {
            let pick = cycles.iter().filter(|x| x.iter().zip(&b).all(|(v, m)| (v * o).rem_euclid(*m) == 0))
                .nth((raw[j] as usize) % 3).cloned().unwrap_or(vec![0; b.len()]);
            cols_in.push(pick);
        }
        let rows_in: Vec<Vec<i64>> = (0..b.len()).map(|i| cols_in.iter().map(|col| col[i]).collect()).collect();
        let mat = |rows: &Vec<Vec<i64>>, r: usize, k: usize| if r == 0 { Matrix::zeros(0, k) } else {
            let refs: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
            Matrix::from_i64_rows(&refs)
        };
        let d_in = Homomorphism::new(group(&a), group(&b), mat(&rows_in, b.len(), a.len())).unwrap();
        let d_out = Homomorphism::new(group(&b), group(&c), mat(&rows_out, c.len(), b.len())).unwrap();
        let mut bounds: Vec<Vec<i64>> = all_elements(&a).iter().map(|x| apply(&rows_in, x, &b)).collect();
        bounds.sort();
        bounds.dedup();
        let h = homology_at(Some(&d_in), Some(&d_out)).unwrap();
        prop_assert_eq!(order_of(h.group()), (cycles.len() / bounds.len()) as i64);
        let reduced = homology_group_at(Some(&d_in), Some(&d_out)).unwrap();
        prop_assert!(are_isomorphic(&reduced, h.group()), "{} vs {}", reduced, h.group());
        // every representative is a cycle and its class is the matching unit vector
        for g in 0..h.group().ngens() {
            let rep: Vec<(usize, Int)> = h.representative(g).iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            let cls = h.class_of(&rep).unwrap();
            for (i, v) in cls.iter().enumerate() {
                prop_assert_eq!(v.clone(), if i == g { Int::ONE } else { Int::ZERO });
            }
        }
        // the power of the homology is the homology of the power complex
        let k = 1 + (raw[8] as usize) % 3;
        let p = h.power(k);
        let full = homology_at(Some(&power_map(&d_in, k)), Some(&power_map(&d_out, k))).unwrap();
        prop_assert_eq!(p.group(), full.group());
        let id = Matrix::identity(p.middle().ngens());
        for f in [p.induced(&id, &full).unwrap(), full.induced(&id, &p).unwrap()] {
            prop_assert!(kernel(&f).unwrap().0.is_trivial() && cokernel(&f).unwrap().0.is_trivial());
        }
    }

    #[test]
    fn reduced_free_homology(rows in 1usize..6, mid in 1usize..7, k in 1usize..6, seed in prop::collection::vec(-3i64..=3, 72)) {
        let out: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * mid..(i + 1) * mid].to_vec()).collect();
        let refs: Vec<&[i64]> = out.iter().map(|x| x.as_slice()).collect();
        let d_out = Homomorphism::new(FgAbGroup::free(mid), FgAbGroup::free(rows), Matrix::from_i64_rows(&refs)).unwrap();
        let (kg, inc) = kernel(&d_out).unwrap();
        let w: Vec<Vec<i64>> = (0..kg.ngens()).map(|i| (0..k).map(|j| seed[36 + (i * k + j) % 36]).collect()).collect();
        let wm = if kg.ngens() == 0 { Matrix::zeros(0, k) } else {
            let refs: Vec<&[i64]> = w.iter().map(|x| x.as_slice()).collect();
            Matrix::from_i64_rows(&refs)
        };
        let d_in = Homomorphism::new(FgAbGroup::free(k), kg, wm).unwrap().then(&inc).unwrap();
        let full = homology_at(Some(&d_in), Some(&d_out)).unwrap();
        let reduced = homology_group_at(Some(&d_in), Some(&d_out)).unwrap();
        prop_assert!(are_isomorphic(&reduced, full.group()), "{} vs {}", reduced, full.group());
    }
}
