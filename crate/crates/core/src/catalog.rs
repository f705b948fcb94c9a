//! Small named groups and modules used as a standard test battery.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::fgab::FgAbGroup;
use crate::gmod::DiscreteGModule;
use crate::groups::{cyclic, from_matrix_generators, product, FiniteGroup};
use crate::int::Int;
use crate::matrix::Matrix;

/// A finite group together with integer matrices through which it acts
/// faithfully on `Z^2`, when such a representation is known.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
    /// Index-2 subgroup membership, for sign characters.
    pub sign: Option<Vec<bool>>,
    pub plane: Option<Vec<Matrix>>,
}

fn mat(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64_rows(rows)
}

fn from_matrices(name: &str, gens: &[Matrix]) -> NamedGroup {
    let (group, mats) = from_matrix_generators(gens, 64).expect("generators of a finite matrix group");
    let sign = mats.iter().map(|m| det2(m) < 0).collect::<Vec<_>>();
    let sign = if sign.iter().any(|&s| s) { Some(sign) } else { None };
    NamedGroup { name: name.into(), group, sign, plane: Some(mats) }
}

fn det2(m: &Matrix) -> i64 {
    let d = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    d.to_i64().unwrap()
}

/// `Z/n`; the rotation representation on `Z^2` exists for `n ∈ {2,3,4,6}`.
pub fn cyclic_named(n: usize) -> NamedGroup {
    let group = cyclic(n).unwrap();
    let sign = if n % 2 == 0 { Some((0..n).map(|g| g % 2 == 1).collect()) } else { None };
    let rot = match n {
        2 => Some(mat(&[&[-1, 0], &[0, -1]])),
        3 => Some(mat(&[&[0, -1], &[1, -1]])),
        4 => Some(mat(&[&[0, -1], &[1, 0]])),
        6 => Some(mat(&[&[1, -1], &[1, 0]])),
        _ => None,
    };
    let plane = rot.map(|r| {
        let mut out = vec![Matrix::identity(2)];
        for _ in 1..n {
            let next = out.last().unwrap().mul(&r);
            out.push(next);
        }
        out
    });
    NamedGroup { name: alloc::format!("Z/{}", n), group, sign, plane }
}

/// The battery `Z/2, Z/3, Z/4, Z/2×Z/2, Z/6, S_3, Z/8, D_4`.
pub fn battery_groups() -> Vec<NamedGroup> {
    let mut v4 = NamedGroup {
        name: "Z/2xZ/2".into(),
        group: product(&cyclic(2).unwrap(), &cyclic(2).unwrap()),
        sign: Some(vec![false, true, false, true]),
        plane: None,
    };
    // (a, b) acts by diag((-1)^a, (-1)^b)
    v4.plane = Some(
        (0..4)
            .map(|x| {
                let (a, b) = (x / 2, x % 2);
                mat(&[&[if a == 1 { -1 } else { 1 }, 0], &[0, if b == 1 { -1 } else { 1 }]])
            })
            .collect(),
    );
    vec![
        cyclic_named(2),
        cyclic_named(3),
        cyclic_named(4),
        v4,
        cyclic_named(6),
        from_matrices("S3", &[mat(&[&[0, -1], &[1, -1]]), mat(&[&[0, 1], &[1, 0]])]),
        cyclic_named(8),
        from_matrices("D4", &[mat(&[&[0, -1], &[1, 0]]), mat(&[&[1, 0], &[0, -1]])]),
    ]
}

/// A module in the battery with a description of its action.
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: DiscreteGModule,
}

/// Coefficients `Z/2, Z/3, Z/4, Z, Z^2` with trivial action, twisted by the
/// sign character where one exists, and `Z^2` through the plane representation.
pub fn battery_modules(g: &NamedGroup, level: usize) -> Result<Vec<NamedModule>, Error> {
    let q = &g.group;
    let bases: Vec<(&str, FgAbGroup)> = vec![
        ("Z/2", FgAbGroup::cyclic(2)),
        ("Z/3", FgAbGroup::cyclic(3)),
        ("Z/4", FgAbGroup::cyclic(4)),
        ("Z", FgAbGroup::free(1)),
        ("Z^2", FgAbGroup::free(2)),
    ];
    let mut out = Vec::new();
    for (name, m) in &bases {
        out.push(NamedModule {
            name: alloc::format!("{} trivial", name),
            module: DiscreteGModule::trivial(q, level, m.clone()),
        });
    }
    if let Some(sign) = &g.sign {
        for (name, m) in &bases {
            if m == &FgAbGroup::cyclic(2) {
                continue;
            }
            let mats: Vec<Matrix> =
                sign.iter().map(|&s| Matrix::identity(m.ngens()).scale(&Int::from(if s { -1 } else { 1 }))).collect();
            out.push(NamedModule {
                name: alloc::format!("{} sign", name),
                module: DiscreteGModule::from_matrices(q, level, m.clone(), &mats)?,
            });
        }
        // the sign character swapping the two coordinates of Z^2
        let swap: Vec<Matrix> =
            sign.iter().map(|&s| if s { mat(&[&[0, 1], &[1, 0]]) } else { Matrix::identity(2) }).collect();
        out.push(NamedModule {
            name: "Z^2 swap".into(),
            module: DiscreteGModule::from_matrices(q, level, FgAbGroup::free(2), &swap)?,
        });
    }
    if let Some(plane) = &g.plane {
        out.push(NamedModule {
            name: "Z^2 faithful".into(),
            module: DiscreteGModule::from_matrices(q, level, FgAbGroup::free(2), plane)?,
        });
    }
    Ok(out)
}
