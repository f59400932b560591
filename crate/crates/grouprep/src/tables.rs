//! Construction of the raw character tables: closed formulas for C_l and
//! D*_n, embedded data for the three exceptional groups.

use exactmath::Cyclo;

use crate::{GroupId, RepType};

pub(crate) struct RawClass {
    pub label: String,
    pub rep: String,
    pub size: u64,
    pub square: usize,
}

pub(crate) struct RawIrrep {
    pub name: String,
    pub ty: RepType,
    pub values: Vec<Cyclo>,
}

pub(crate) struct RawTable {
    pub classes: Vec<RawClass>,
    pub irreps: Vec<RawIrrep>,
    /// Index of the defining representation when it is irreducible.
    pub q_index: Option<usize>,
}

pub(crate) fn raw_table(g: GroupId) -> RawTable {
    match g {
        GroupId::Cyclic(l) => cyclic(l),
        GroupId::BinaryDihedral(n) => dihedral(n),
        GroupId::BinaryTetrahedral => embedded(24, &T_CLASSES, &T_ROWS, 5),
        GroupId::BinaryOctahedral => embedded(48, &O_CLASSES, &O_ROWS, 3),
        GroupId::BinaryIcosahedral => embedded(120, &I_CLASSES, &I_ROWS, 1),
    }
}

fn cyclic(l: u32) -> RawTable {
    let l = l as i64;
    let n = 2 * l as usize;
    // x = zeta_{2l}, so zeta_l = x^2.
    let classes = (0..l)
        .map(|m| RawClass {
            label: format!("g{m}"),
            rep: format!("g^{m}"),
            size: 1,
            square: ((2 * m) % l) as usize,
        })
        .collect();
    let irreps = (0..l)
        .map(|k| RawIrrep {
            name: format!("ρ{k}"),
            ty: if k == 0 || 2 * k == l { RepType::Real } else { RepType::Complex },
            values: (0..l).map(|m| Cyclo::zeta(n, 2 * k * m)).collect(),
        })
        .collect();
    RawTable { classes, irreps, q_index: None }
}

fn dihedral(n: u32) -> RawTable {
    let n = n as i64;
    let big = 4 * n as usize;
    // x = zeta_{4n}; a = zeta_{2n} = x^2; i = x^n.
    let mut classes = vec![
        RawClass { label: "1".into(), rep: "1".into(), size: 1, square: 0 },
        RawClass { label: "-1".into(), rep: "-1".into(), size: 1, square: 0 },
    ];
    // Class index of a^m for any m (mod 2n).
    let class_of_power = |m: i64| -> usize {
        let m = m.rem_euclid(2 * n);
        let m = if m > n { 2 * n - m } else { m };
        match m {
            0 => 0,
            m if m == n => 1,
            m => 1 + m as usize,
        }
    };
    for j in 1..n {
        classes.push(RawClass { label: format!("a{j}"), rep: format!("a^{j}"), size: 2, square: class_of_power(2 * j) });
    }
    classes.push(RawClass { label: "x".into(), rep: "x".into(), size: n as u64, square: 1 });
    classes.push(RawClass { label: "xa".into(), rep: "xa".into(), size: n as u64, square: 1 });

    let one = |k: i64| Cyclo::from_int(big, k);
    let powers = |f: &dyn Fn(i64) -> Cyclo| -> Vec<Cyclo> { (0..=n).map(f).collect() };
    // Values on 1, -1, a^1..a^{n-1} from a function of the exponent j
    // (with -1 = a^n), followed by the two x-classes.
    let row = |on_a: Vec<Cyclo>, x: Cyclo, xa: Cyclo| -> Vec<Cyclo> {
        let mut v = vec![on_a[0].clone(), on_a[n as usize].clone()];
        v.extend(on_a[1..n as usize].iter().cloned());
        v.push(x);
        v.push(xa);
        v
    };
    let sign = |j: i64| if j % 2 == 0 { 1 } else { -1 };
    let eps = if n % 2 == 0 { one(1) } else { Cyclo::zeta(big, n) };
    let mut irreps = vec![
        RawIrrep { name: "ρ0".into(), ty: RepType::Real, values: row(powers(&|_| one(1)), one(1), one(1)) },
        RawIrrep { name: "ρ1".into(), ty: RepType::Real, values: row(powers(&|_| one(1)), one(-1), one(-1)) },
    ];
    let odd_ty = if n % 2 == 0 { RepType::Real } else { RepType::Complex };
    for (name, e) in [("ρ2", eps.clone()), ("ρ3", -eps.clone())] {
        irreps.push(RawIrrep {
            name: name.into(),
            ty: odd_ty,
            values: row(powers(&|j| one(sign(j))), e.clone(), -e.clone()),
        });
    }
    for k in 1..n {
        let ty = if k % 2 == 1 { RepType::Quaternionic } else { RepType::Real };
        irreps.push(RawIrrep {
            name: format!("τ{k}"),
            ty,
            values: row(powers(&|j| Cyclo::sum_of_roots(big, &[(2 * j * k, 1), (-2 * j * k, 1)])), one(0), one(0)),
        });
    }
    RawTable { classes, irreps, q_index: Some(4) }
}

// Exceptional tables: (label, representative, size, square-class label).
type ClassRow = (&'static str, &'static str, u64, &'static str);
type IrrepRow = (&'static str, &'static str, &'static str);

const T_CLASSES: [ClassRow; 7] = [
    ("1", "1", 1, "1"),
    ("2", "-1", 1, "1"),
    ("3a", "-x", 4, "3b"),
    ("3b", "-x*", 4, "3a"),
    ("4", "i", 6, "2"),
    ("6a", "x", 4, "3b"),
    ("6b", "x*", 4, "3a"),
];

// w = e^{2 pi i/3}.
const T_ROWS: [IrrepRow; 7] = [
    ("ρ1", "R", "1 1 1 1 1 1 1"),
    ("ρ2", "C", "1 1 w w2 1 w w2"),
    ("ρ2*", "C", "1 1 w2 w 1 w2 w"),
    ("ρ3", "C", "2 -2 -w -w2 0 w w2"),
    ("ρ3*", "C", "2 -2 -w2 -w 0 w2 w"),
    ("ρ4", "H", "2 -2 -1 -1 0 1 1"),
    ("ρ5", "R", "3 3 0 0 -1 0 0"),
];

const O_CLASSES: [ClassRow; 8] = [
    ("1", "1", 1, "1"),
    ("2", "-1", 1, "1"),
    ("3", "-x", 8, "3"),
    ("4a", "i", 6, "2"),
    ("4b", "z", 12, "2"),
    ("6", "x", 8, "3"),
    ("8a", "y", 6, "4a"),
    ("8b", "-y", 6, "4a"),
];

// r2 = sqrt 2.
const O_ROWS: [IrrepRow; 8] = [
    ("ρ1", "R", "1 1 1 1 1 1 1 1"),
    ("ρ2", "R", "1 1 1 1 -1 1 -1 -1"),
    ("ρ3", "R", "2 2 -1 2 0 -1 0 0"),
    ("ρ4", "H", "2 -2 -1 0 0 1 r2 -r2"),
    ("ρ5", "H", "2 -2 -1 0 0 1 -r2 r2"),
    ("ρ6", "R", "3 3 0 -1 -1 0 1 1"),
    ("ρ7", "R", "3 3 0 -1 1 0 -1 -1"),
    ("ρ8", "H", "4 -4 1 0 0 -1 0 0"),
];

const I_CLASSES: [ClassRow; 9] = [
    ("1", "1", 1, "1"),
    ("2", "-1", 1, "1"),
    ("3", "-x", 20, "3"),
    ("4", "i", 30, "2"),
    ("5a", "u^2", 12, "5b"),
    ("5b", "-u", 12, "5a"),
    ("6", "x", 20, "3"),
    ("10a", "u", 12, "5a"),
    ("10b", "-u^2", 12, "5b"),
];

// p = golden ratio, pi = its inverse.
const I_ROWS: [IrrepRow; 9] = [
    ("ρ1", "R", "1 1 1 1 1 1 1 1 1"),
    ("ρ2", "H", "2 -2 -1 0 pi -p 1 p -pi"),
    ("ρ3", "H", "2 -2 -1 0 -p pi 1 -pi p"),
    ("ρ4", "R", "3 3 0 -1 -pi p 0 p -pi"),
    ("ρ5", "R", "3 3 0 -1 p -pi 0 -pi p"),
    ("ρ6", "R", "4 4 1 0 -1 -1 1 -1 -1"),
    ("ρ7", "H", "4 -4 1 0 -1 -1 -1 1 1"),
    ("ρ8", "R", "5 5 -1 1 0 0 -1 0 0"),
    ("ρ9", "H", "6 -6 0 0 1 1 0 -1 -1"),
];

/// Parse one table token into an element of Q(zeta_n).
fn token(n: usize, tok: &str) -> Cyclo {
    let (neg, body) = match tok.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, tok),
    };
    let v = match body {
        "w" => Cyclo::zeta(n, n as i64 / 3),
        "w2" => Cyclo::zeta(n, 2 * n as i64 / 3),
        "r2" => Cyclo::sum_of_roots(n, &[(n as i64 / 8, 1), (-(n as i64) / 8, 1)]),
        "p" => Cyclo::sum_of_roots(n, &[(n as i64 / 10, 1), (-(n as i64) / 10, 1)]),
        "pi" => Cyclo::sum_of_roots(n, &[(n as i64 / 5, 1), (-(n as i64) / 5, 1)]),
        num => Cyclo::from_int(n, num.parse().unwrap_or_else(|_| panic!("bad table token {tok}"))),
    };
    if neg {
        -v
    } else {
        v
    }
}

fn embedded(n: usize, classes: &[ClassRow], rows: &[IrrepRow], q: usize) -> RawTable {
    let idx = |label: &str| classes.iter().position(|c| c.0 == label).expect("square class label");
    let classes_out = classes
        .iter()
        .map(|&(label, rep, size, sq)| RawClass { label: label.into(), rep: rep.into(), size, square: idx(sq) })
        .collect();
    let irreps = rows
        .iter()
        .map(|&(name, ty, vals)| RawIrrep {
            name: name.into(),
            ty: match ty {
                "R" => RepType::Real,
                "C" => RepType::Complex,
                _ => RepType::Quaternionic,
            },
            values: vals.split_whitespace().map(|t| token(n, t)).collect(),
        })
        .collect();
    RawTable { classes: classes_out, irreps, q_index: Some(q) }
}
