//! The ten-element Brauer-Wall monoid, the symmetry-datum dictionary, exact
//! signatures of rational symmetric forms, and the Clifford-type rule.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::algebra_model::{AlgebraModel, Weight};
use crate::error::{bail, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, GR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endotype {
    /// k_C, k in {0, 1}
    Complex(u8),
    /// k_R, k in 0..8
    Real(u8),
}

impl Endotype {
    pub fn real(k: i64) -> Self {
        Endotype::Real(k.rem_euclid(8) as u8)
    }

    pub fn complex(k: i64) -> Self {
        Endotype::Complex(k.rem_euclid(2) as u8)
    }

    pub fn all() -> Vec<Endotype> {
        let mut v: Vec<Endotype> = (0..2).map(Endotype::Complex).collect();
        v.extend((0..8).map(Endotype::Real));
        v
    }

    pub fn index(self) -> u8 {
        match self {
            Endotype::Complex(k) | Endotype::Real(k) => k,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Endotype::Real(_))
    }
}

impl fmt::Display for Endotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endotype::Complex(k) => write!(f, "{k}C"),
            Endotype::Real(k) => write!(f, "{k}R"),
        }
    }
}

impl FromStr for Endotype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (k, field) = s.split_at(s.len().saturating_sub(1));
        let k: u8 = k.parse().map_err(|_| Error::Invalid(format!("bad endotype {s:?}")))?;
        match field {
            "C" if k < 2 => Ok(Endotype::Complex(k)),
            "R" if k < 8 => Ok(Endotype::Real(k)),
            _ => Err(Error::Invalid(format!("bad endotype {s:?}"))),
        }
    }
}

pub fn bw_product(a: Endotype, b: Endotype) -> Endotype {
    use Endotype::*;
    match (a, b) {
        (Real(x), Real(y)) => Endotype::real(x as i64 + y as i64),
        (Complex(x), Complex(y)) | (Complex(x), Real(y)) | (Real(x), Complex(y)) => {
            Endotype::complex(x as i64 + y as i64)
        }
    }
}

/// Which self-isomorphisms a complex irreducible module admits.
/// `b` and `pib` hold the sign of T^2 for even and odd antilinear T.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymmetryDatum {
    pub pi: bool,
    pub b: Option<i8>,
    pub pib: Option<i8>,
}

impl fmt::Display for SymmetryDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { '+' } else { '-' };
        let mut parts = Vec::new();
        if self.pi {
            parts.push("Pi".to_string());
        }
        if let Some(s) = self.b {
            parts.push(format!("(B,{})", sign(s)));
        }
        if let Some(s) = self.pib {
            parts.push(format!("(PiB,{})", sign(s)));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitsAs {
    /// Restriction of W to the real form is V + V (F(W) = V + V).
    VPlusV,
    /// W stays irreducible and E(V) = W + B(W) with B(W) isomorphic to W up to parity.
    WItself,
    /// E(V) = W + B(W) with B(W) not isomorphic to W or Pi W.
    WPlusConjugate,
}

impl fmt::Display for SplitsAs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitsAs::VPlusV => "V+V",
            SplitsAs::WItself => "W",
            SplitsAs::WPlusConjugate => "W+B(W)",
        })
    }
}

impl FromStr for SplitsAs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V+V" => Ok(SplitsAs::VPlusV),
            "W" => Ok(SplitsAs::WItself),
            "W+B(W)" => Ok(SplitsAs::WPlusConjugate),
            _ => Err(Error::Invalid(format!("bad split type {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumRow {
    pub endotype: Endotype,
    pub divalg: &'static str,
    pub complexification: &'static str,
    /// E(V) is W alone.
    pub e_is_w: bool,
    pub datum: SymmetryDatum,
    /// Real dimension of the division superalgebra.
    pub real_dim: usize,
}

fn datum(pi: bool, b: Option<i8>, pib: Option<i8>) -> SymmetryDatum {
    SymmetryDatum { pi, b, pib }
}

pub fn datum_row(e: Endotype) -> DatumRow {
    use Endotype::*;
    let (divalg, cx, e_is_w, d, dim) = match e {
        Complex(0) => ("C", "C+C", false, datum(false, None, None), 2),
        Complex(_) => ("Q(1) = C+Ci, i^2=1, ii=ii", "Q(1)+Q(1)", false, datum(true, None, None), 4),
        Real(0) => ("R", "C", true, datum(false, Some(1), None), 1),
        Real(1) => ("R+Ri, i^2=-1", "Q(1)", true, datum(true, Some(1), Some(-1)), 2),
        Real(2) => ("C+Ci, i^2=-1, i anticommutes with C", "Mat(1|1,C)", false, datum(false, None, Some(-1)), 4),
        Real(3) => ("H+Hi, i^2=1", "Mat(2,Q(1))", false, datum(true, Some(-1), Some(-1)), 8),
        Real(4) => ("H", "Mat(2,C)", false, datum(false, Some(-1), None), 4),
        Real(5) => ("H+Hi, i^2=-1", "Mat(2,Q(1))", false, datum(true, Some(-1), Some(1)), 8),
        Real(6) => ("C+Ci, i^2=1, i anticommutes with C", "Mat(1|1,C)", false, datum(false, None, Some(1)), 4),
        Real(_) => ("R+Ri, i^2=1", "Q(1)", true, datum(true, Some(1), Some(1)), 2),
    };
    DatumRow { endotype: e, divalg, complexification: cx, e_is_w, datum: d, real_dim: dim }
}

pub fn endotype_of_datum(d: &SymmetryDatum) -> Result<Endotype> {
    let hits: Vec<Endotype> = Endotype::all().into_iter().filter(|e| datum_row(*e).datum == *d).collect();
    match hits.as_slice() {
        [e] => Ok(*e),
        _ => Err(Error::Invalid(format!("symmetry datum {d} matches {} rows", hits.len()))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WEnd {
    C,
    Q1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub endotype: Endotype,
    pub divalg: &'static str,
    pub restriction_irreducible: bool,
    pub splits_as: SplitsAs,
    pub wend_complex: WEnd,
}

pub fn report(e: Endotype) -> ClassificationReport {
    let row = datum_row(e);
    let splits_as = if row.e_is_w {
        SplitsAs::VPlusV
    } else if e.is_real() {
        SplitsAs::WItself
    } else {
        SplitsAs::WPlusConjugate
    };
    ClassificationReport {
        endotype: e,
        divalg: row.divalg,
        restriction_irreducible: !row.e_is_w,
        splits_as,
        wend_complex: if e.index() % 2 == 0 { WEnd::C } else { WEnd::Q1 },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
}

/// Exact signature of a rational symmetric matrix by congruence elimination.
pub fn signature(g: &[Vec<Rational>]) -> Result<Signature> {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g.to_vec();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            bail!(Invalid, "Gram matrix is not square");
        }
        for j in 0..n {
            if a[i][j] != a[j][i] {
                bail!(Invalid, "Gram matrix is not symmetric at ({}, {})", i + 1, j + 1);
            }
        }
    }
    let (mut p, mut q) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let off = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else { break };
                // row/col i += row/col j makes a[i][i] = 2 a[i][j]
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[piv][piv].clone();
        if d.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        active.retain(|&i| i != piv);
        for &i in &active {
            if a[i][piv].is_zero() {
                continue;
            }
            let f = &a[i][piv] / &d;
            for k in 0..n {
                let v = &f * &a[piv][k];
                a[i][k] -= v;
            }
            for k in 0..n {
                let v = &f * &a[k][piv];
                a[k][i] -= v;
            }
        }
    }
    Ok(Signature { p, q, rank: p + q })
}

/// Endotype of the Clifford module of a real quadratic space of signature (p, q).
pub fn clifford_signature_endotype(p: usize, q: usize) -> Endotype {
    Endotype::real(q as i64 - p as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordData {
    pub endotype: Endotype,
    /// Complex rank of B_lambda on the odd Cartan.
    pub rank: usize,
    /// Whether lambda = conj(lambda o tau).
    pub self_conjugate: bool,
    pub signature: Option<Signature>,
}

/// Coordinates of x in the span of `basis` (flattened matrices).
pub fn coordinates(basis: &[Matrix], x: &Matrix) -> Option<Vec<GR>> {
    let k = basis.len();
    let cells = x.rows * x.cols;
    let mut aug = Matrix::zeros(cells, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (r, c, v) in b.nonzero_entries() {
            aug.set(r * x.cols + c, j, v.clone());
        }
    }
    for (r, c, v) in x.nonzero_entries() {
        aug.set(r * x.cols + c, k, v.clone());
    }
    let pivots = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![GR::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        out[pc] = aug.get(row, k).clone();
    }
    Some(out)
}

/// Real basis of the fixed points of an antilinear involution acting on
/// span(basis).
pub fn real_points(basis: &[Matrix], tau: &dyn Fn(&Matrix) -> Matrix) -> Result<Vec<Matrix>> {
    let k = basis.len();
    // tau(x_j) = sum_i t_ij x_i
    let mut t = Matrix::zeros(k, k);
    for (j, x) in basis.iter().enumerate() {
        let c = coordinates(basis, &tau(x))
            .ok_or_else(|| Error::Invariant("tau does not preserve the subspace".into()))?;
        for (i, v) in c.into_iter().enumerate() {
            t.set(i, j, v);
        }
    }
    // sum_j conj(z_j) t_ij = z_i with z = u + i v, t = P + i Q:
    // P u + Q v - u = 0, Q u - P v - v = 0
    let mut sys = Matrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let pr = GR::real(t.get(i, j).re.clone());
            let qr = GR::real(t.get(i, j).im.clone());
            sys.set(i, j, pr.clone());
            sys.set(i, k + j, qr.clone());
            sys.set(k + i, j, qr);
            sys.set(k + i, k + j, -pr);
        }
        sys.add_at(i, i, &GR::int(-1));
        sys.add_at(k + i, k + i, &GR::int(-1));
    }
    let ns = sys.nullspace();
    if ns.len() != k {
        bail!(Invariant, "real form has dimension {} instead of {}", ns.len(), k);
    }
    Ok(ns
        .iter()
        .map(|v| {
            let mut acc = Matrix::zeros(basis[0].rows, basis[0].cols);
            for j in 0..k {
                let z = GR::new(v[j].re.clone(), v[k + j].re.clone());
                if !z.is_zero() {
                    acc = &acc + &basis[j].scale(&z);
                }
            }
            acc
        })
        .collect())
}

/// Clifford-type rule: lambda is a weight of the even Cartan, `odd_basis`
/// spans the odd Cartan, `tau` is the relevant antilinear involution.
pub fn clifford_endotype(
    model: &AlgebraModel,
    lambda: &Weight,
    tau: &dyn Fn(&Matrix) -> Matrix,
    odd_basis: &[Matrix],
) -> Result<CliffordData> {
    let gram = |xs: &[Matrix]| -> Matrix {
        let k = xs.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, model.eval_weight(lambda, &model.superbracket(&xs[i], &xs[j])));
            }
        }
        g
    };
    let rank = if odd_basis.is_empty() { 0 } else { gram(odd_basis).rank() };
    let conj_weight = Weight::new(
        (0..model.rank())
            .map(|a| model.eval_weight(lambda, &tau(&model.cartan_unit(a))).conj())
            .collect(),
        lambda.m,
    );
    if !model.weights_equal(&conj_weight, lambda) {
        return Ok(CliffordData { endotype: Endotype::complex(rank as i64), rank, self_conjugate: false, signature: None });
    }
    if odd_basis.is_empty() {
        return Ok(CliffordData { endotype: Endotype::Real(0), rank, self_conjugate: true, signature: Some(Signature { p: 0, q: 0, rank: 0 }) });
    }
    let real = real_points(odd_basis, tau)?;
    let g = gram(&real);
    let mut rows = Vec::new();
    for i in 0..g.rows {
        let mut row = Vec::new();
        for j in 0..g.cols {
            let v = g.get(i, j);
            if !v.is_real() {
                bail!(Invariant, "B_lambda is not real on the real odd Cartan");
            }
            row.push(v.re.clone());
        }
        rows.push(row);
    }
    let sig = signature(&rows)?;
    Ok(CliffordData {
        endotype: clifford_signature_endotype(sig.p, sig.q),
        rank,
        self_conjugate: true,
        signature: Some(sig),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_forms::{make_involution, InvolutionSpec};
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn serialization() {
        let names: Vec<String> = Endotype::all().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0C", "1C", "0R", "1R", "2R", "3R", "4R", "5R", "6R", "7R"]);
        for e in Endotype::all() {
            assert_eq!(e.to_string().parse::<Endotype>().unwrap(), e);
        }
        for bad in ["2C", "8R", "0c", "R", ""] {
            assert!(bad.parse::<Endotype>().is_err());
        }
    }

    #[test]
    fn monoid_laws() {
        let all = Endotype::all();
        for &a in &all {
            assert_eq!(bw_product(Endotype::Real(0), a), a);
            for &b in &all {
                assert_eq!(bw_product(a, b), bw_product(b, a));
                for &c in &all {
                    assert_eq!(bw_product(bw_product(a, b), c), bw_product(a, bw_product(b, c)));
                }
                if !a.is_real() {
                    assert!(!bw_product(a, b).is_real());
                }
            }
        }
        assert_eq!(bw_product(Endotype::Real(4), Endotype::Real(4)), Endotype::Real(0));
        assert_eq!(bw_product(Endotype::Complex(1), Endotype::Real(1)), Endotype::Complex(0));
    }

    #[test]
    fn datum_rows_are_bijective() {
        for e in Endotype::all() {
            assert_eq!(endotype_of_datum(&datum_row(e).datum).unwrap(), e);
        }
        assert_eq!(endotype_of_datum(&datum(false, Some(1), None)).unwrap(), Endotype::Real(0));
        assert_eq!(endotype_of_datum(&datum(true, Some(-1), Some(-1))).unwrap(), Endotype::Real(3));
        assert_eq!(endotype_of_datum(&datum(false, None, None)).unwrap(), Endotype::Complex(0));
        assert!(endotype_of_datum(&datum(true, Some(1), None)).is_err());
    }

    #[test]
    fn reports() {
        let r = report(Endotype::Real(4));
        assert!(r.restriction_irreducible);
        assert_eq!(r.divalg, "H");
        assert_eq!(r.wend_complex, WEnd::C);
        let r = report(Endotype::Real(7));
        assert!(!r.restriction_irreducible);
        assert_eq!(r.splits_as, SplitsAs::VPlusV);
        assert_eq!(r.wend_complex, WEnd::Q1);
        assert_eq!(report(Endotype::Complex(0)).splits_as, SplitsAs::WPlusConjugate);
        for e in Endotype::all() {
            let reducible = matches!(e, Endotype::Real(0 | 1 | 7));
            assert_eq!(report(e).restriction_irreducible, !reducible);
        }
    }

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&q(&[&[1, 0], &[0, -1]])).unwrap(), Signature { p: 1, q: 1, rank: 2 });
        assert_eq!(signature(&q(&[&[0, 0], &[0, 0]])).unwrap(), Signature { p: 0, q: 0, rank: 0 });
        assert_eq!(signature(&q(&[&[0, 1], &[1, 0]])).unwrap(), Signature { p: 1, q: 1, rank: 2 });
        assert_eq!(signature(&q(&[&[1, 2], &[2, 4]])).unwrap(), Signature { p: 1, q: 0, rank: 1 });
        assert!(signature(&q(&[&[1, 2], &[3, 4]])).is_err());
    }

    #[test]
    fn q2_split_gram() {
        let model = AlgebraModel::q(2);
        let t = make_involution(InvolutionSpec::Split, &model).unwrap();
        let lam = Weight::from_ints(&model, &[1, 2]);
        let odd = vec![model.odd_cartan_unit(0), model.odd_cartan_unit(1)];
        let d = clifford_endotype(&model, &lam, &|x| t.apply(x), &odd).unwrap();
        assert_eq!(d.signature, Some(Signature { p: 2, q: 0, rank: 2 }));
        assert_eq!(d.endotype, Endotype::Real(6));
    }

    #[test]
    fn q1_clifford_cases() {
        let model = AlgebraModel::q(1);
        let odd = vec![model.odd_cartan_unit(0)];
        let split = make_involution(InvolutionSpec::Split, &model).unwrap();
        let lam = Weight::from_ints(&model, &[1]);
        assert_eq!(clifford_endotype(&model, &lam, &|x| split.apply(x), &odd).unwrap().endotype, Endotype::Real(7));
        let lam = Weight::from_ints(&model, &[-1]);
        assert_eq!(clifford_endotype(&model, &lam, &|x| split.apply(x), &odd).unwrap().endotype, Endotype::Real(1));
        // lambda not real: complex, rank 1
        let lam = Weight::new(vec![GR::from_parts((1, 1), (1, 1))], 1);
        let d = clifford_endotype(&model, &lam, &|x| split.apply(x), &odd).unwrap();
        assert_eq!((d.endotype, d.rank), (Endotype::Complex(1), 1));
        // abelian case with real lambda
        let lam = Weight::from_ints(&model, &[0]);
        assert_eq!(clifford_endotype(&model, &lam, &|x| split.apply(x), &odd).unwrap().endotype, Endotype::Real(0));
    }

    fn diag(p: usize, q: usize) -> Vec<Vec<Rational>> {
        let n = p + q;
        (0..n)
            .map(|i| (0..n).map(|j| if i != j { rat_int(0) } else if i < p { rat(i as i64 + 1, 2) } else { rat(-3, 1 + i as i64) }).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn signature_congruence_invariant(entries in proptest::collection::vec(-4i64..5, 16), ops in proptest::collection::vec((0usize..4, 0usize..4, -3i64..4), 1..8)) {
            let mut g: Vec<Vec<Rational>> = vec![vec![rat_int(0); 4]; 4];
            for i in 0..4 {
                for j in i..4 {
                    g[i][j] = rat_int(entries[4 * i + j]);
                    g[j][i] = rat_int(entries[4 * i + j]);
                }
            }
            let s0 = signature(&g).unwrap();
            // unimodular A built from elementary operations; G -> A^T G A
            let mut h = g.clone();
            for (i, j, c) in ops {
                if i == j { continue; }
                let c = rat_int(c);
                for k in 0..4 { let v = &c * &h[j][k]; h[i][k] += v; }
                for k in 0..4 { let v = &c * &h[k][j]; h[k][i] += v; }
            }
            prop_assert_eq!(signature(&h).unwrap(), s0);
        }

        #[test]
        fn clifford_additivity(p1 in 0usize..5, q1 in 0usize..5, p2 in 0usize..5, q2 in 0usize..5) {
            let a = diag(p1, q1);
            let b = diag(p2, q2);
            let n = a.len() + b.len();
            let mut s = vec![vec![rat_int(0); n]; n];
            for i in 0..a.len() { for j in 0..a.len() { s[i][j] = a[i][j].clone(); } }
            for i in 0..b.len() { for j in 0..b.len() { s[a.len() + i][a.len() + j] = b[i][j].clone(); } }
            let e = |g: &Vec<Vec<Rational>>| { let s = signature(g).unwrap(); clifford_signature_endotype(s.p, s.q) };
            prop_assert_eq!(e(&s), bw_product(e(&a), e(&b)));
        }
    }
}
