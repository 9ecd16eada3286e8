//! Test-side oracles. Everything here is written against plain rationals and
//! small integer sign codes so it shares no code paths with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qv(values: &[i64]) -> Vec<Q> {
    values.iter().map(|&v| q(v)).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Row echelon form by elimination; returns the pivot columns.
fn echelon(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    echelon(rows.to_vec(), ncols).1.len()
}

/// A nonzero `y` with `sum y_i rows_i = 0`, if the rows are dependent.
pub fn left_null_vector(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let transposed: Vec<Vec<Q>> = (0..n).map(|c| (0..k).map(|r| rows[r][c].clone()).collect()).collect();
    let (red, pivots) = echelon(transposed, k);
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut y = vec![Q::zero(); k];
    y[free] = Q::one();
    for (r, &p) in pivots.iter().enumerate() {
        y[p] = -red[r][free].clone();
    }
    Some(y)
}

/// Coprime integers with the first nonzero entry positive.
pub fn canonical(v: &[Q]) -> Vec<Q> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = Q::from_integer(x / &g);
            if flip {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// Every subset of size at most `max_size` that is dependent while all its
/// proper subsets are independent, with its canonical dependence vector.
pub fn circuits_brute(u: &[Vec<Q>], max_size: usize) -> Vec<(Vec<usize>, Vec<Q>)> {
    let m = u.len();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << m))
        .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| s.len() <= max_size)
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let dependent = |s: &[usize]| {
        let rows: Vec<Vec<Q>> = s.iter().map(|&i| u[i].clone()).collect();
        rank(&rows) < s.len()
    };
    let mut out = Vec::new();
    for s in subsets {
        if !dependent(&s) {
            continue;
        }
        let minimal = (0..s.len()).all(|drop| {
            let sub: Vec<usize> = s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &x)| x).collect();
            sub.is_empty() || !dependent(&sub)
        });
        if !minimal {
            continue;
        }
        let rows: Vec<Vec<Q>> = s.iter().map(|&i| u[i].clone()).collect();
        let y = left_null_vector(&rows).expect("dependent rows");
        let mut full = vec![Q::zero(); m];
        for (k, &i) in s.iter().enumerate() {
            full[i] = y[k].clone();
        }
        out.push((s, canonical(&full)));
    }
    out
}

/// Sign codes (-1, 0, 1) of `<c, a>` over every circuit of `u`.
pub fn derived_sign(u: &[Vec<Q>], a: &[Q]) -> Vec<i8> {
    let n = u.first().map_or(0, Vec::len);
    circuits_brute(u, n + 1)
        .iter()
        .map(|(_, c)| sign_code(&dot(c, a)))
        .collect()
}

pub fn sign_code(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
}

/// Fourier–Motzkin elimination with strictness tracking.
pub fn fm_feasible(n: usize, rows: &[(Vec<Q>, Rel, Q)]) -> bool {
    // (a, b, strict) means a.x <= b, or a.x < b when strict
    let mut sys: Vec<(Vec<Q>, Q, bool)> = Vec::new();
    for (a, rel, b) in rows {
        let neg = |v: &[Q]| v.iter().map(|x| -x.clone()).collect::<Vec<_>>();
        match rel {
            Rel::Le => sys.push((a.clone(), b.clone(), false)),
            Rel::Lt => sys.push((a.clone(), b.clone(), true)),
            Rel::Ge => sys.push((neg(a), -b.clone(), false)),
            Rel::Gt => sys.push((neg(a), -b.clone(), true)),
            Rel::Eq => {
                sys.push((a.clone(), b.clone(), false));
                sys.push((neg(a), -b.clone(), false));
            }
        }
    }
    for k in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in sys {
            if row.0[k].is_positive() {
                pos.push(row);
            } else if row.0[k].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for (pa, pb, ps) in &pos {
            for (na, nb, ns) in &neg {
                let (sp, sn) = (pa[k].clone(), -na[k].clone());
                let a: Vec<Q> = pa.iter().zip(na).map(|(x, y)| x / &sp + y / &sn).collect();
                let b = pb / &sp + nb / &sn;
                rest.push((a, b, *ps || *ns));
            }
        }
        sys = rest;
    }
    sys.iter().all(|(_, b, strict)| if *strict { b.is_positive() } else { !b.is_negative() })
}

/// Vertices of `{x in R^2 : rows_i . x <= b_i}` by solving every 2x2 system.
pub fn vertices_2d(rows: &[Vec<Q>], b: &[Q]) -> BTreeSet<(Q, Q)> {
    let mut out = BTreeSet::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let det = &rows[i][0] * &rows[j][1] - &rows[i][1] * &rows[j][0];
            if det.is_zero() {
                continue;
            }
            let x = (&b[i] * &rows[j][1] - &rows[i][1] * &b[j]) / &det;
            let y = (&rows[i][0] * &b[j] - &b[i] * &rows[j][0]) / &det;
            let p = [x.clone(), y.clone()];
            if rows.iter().zip(b).all(|(r, bi)| dot(r, &p) <= *bi) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// The four covector axioms by direct scanning; sign codes in {-1, 0, 1}.
pub fn covector_axioms_hold(set: &BTreeSet<Vec<i8>>) -> bool {
    let m = match set.iter().next() {
        Some(x) => x.len(),
        None => return false,
    };
    if !set.contains(&vec![0; m]) {
        return false;
    }
    let neg = |x: &Vec<i8>| x.iter().map(|v| -v).collect::<Vec<i8>>();
    let compose = |x: &Vec<i8>, y: &Vec<i8>| {
        x.iter().zip(y).map(|(a, b)| if *a != 0 { *a } else { *b }).collect::<Vec<i8>>()
    };
    for x in set {
        if !set.contains(&neg(x)) {
            return false;
        }
        for y in set {
            let xy = compose(x, y);
            if !set.contains(&xy) {
                return false;
            }
            let sep: Vec<usize> = (0..m).filter(|&e| x[e] != 0 && x[e] == -y[e]).collect();
            for &e in &sep {
                let ok = set.iter().any(|z| {
                    z[e] == 0 && (0..m).filter(|f| !sep.contains(f)).all(|f| z[f] == xy[f])
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}
