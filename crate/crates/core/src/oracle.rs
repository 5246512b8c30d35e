//! Brute-force symmetry data of explicit small modules. Nothing here calls the
//! endotype engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra_model::{build_algebra, AlgebraModel, Family, Weight};
use crate::bw_monoid::{coordinates, endotype_of_datum, datum_row, Endotype, SymmetryDatum};
use crate::error::{bail, Result};
use crate::linalg::Matrix;
use crate::real_forms::{make_involution, InvolutionSpec};
use crate::scalar::GR;

/// Sym^k(C^n) tensor det^shift, highest weight (k + shift, shift, ..., shift).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlModule {
    pub n: usize,
    pub k: usize,
    pub shift: GR,
}

impl GlModule {
    pub fn character(n: usize, shift: GR) -> Self {
        GlModule { n, k: 0, shift }
    }

    fn monomials(&self) -> Vec<Vec<usize>> {
        fn rec(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() + 1 == n {
                prefix.push(k);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=k).rev() {
                prefix.push(e);
                rec(n, k - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.n, self.k, &mut Vec::new(), &mut out);
        out
    }

    pub fn dim(&self) -> usize {
        self.monomials().len()
    }

    /// E_ab acts as x_a d/dx_b + shift delta_ab.
    pub fn unit(&self, a: usize, b: usize) -> Matrix {
        let mons = self.monomials();
        let index: BTreeMap<&Vec<usize>, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(mons.len(), mons.len());
        for (j, mon) in mons.iter().enumerate() {
            if mon[b] == 0 {
                continue;
            }
            let mut img = mon.clone();
            img[b] -= 1;
            img[a] += 1;
            out.add_at(index[&img], j, &GR::int(mon[b] as i64));
        }
        if a == b {
            for j in 0..mons.len() {
                out.add_at(j, j, &self.shift);
            }
        }
        out
    }

    pub fn highest_weight(&self) -> Vec<GR> {
        let mut w = vec![self.shift.clone(); self.n];
        w[0] = &w[0] + &GR::int(self.k as i64);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleRecipe {
    /// Kac module over gl(m|n) (or its sl quotient) induced from eps tensor delta.
    Kac { family: Family, eps: GlModule, delta: GlModule },
    /// One-dimensional module c * str of gl(m|n).
    Supertrace { m: usize, n: usize, c: GR },
    /// Sym^k(C^n) over gl(n) or sl(n).
    SymPower { family: Family, n: usize, k: usize },
    /// Defining module C^{n|n} of q(n).
    QNatural { n: usize },
    /// The 1|1 module of q(1) with H acting by c and the odd Cartan by a square root of c.
    QOne { c: GR },
}

impl fmt::Display for ModuleRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleRecipe::Kac { family, eps, delta } => {
                let w: Vec<String> = eps.highest_weight().iter().chain(&delta.highest_weight()).map(|x| x.to_string()).collect();
                write!(f, "Kac {}({}|{}) ({})", family_name(*family), eps.n, delta.n, w.join(", "))
            }
            ModuleRecipe::Supertrace { m, n, c } => write!(f, "{c} str on gl({m}|{n})"),
            ModuleRecipe::SymPower { family, n, k } => write!(f, "Sym^{k} of {}({n})", family_name(*family)),
            ModuleRecipe::QNatural { n } => write!(f, "natural q({n})"),
            ModuleRecipe::QOne { c } => write!(f, "q(1) weight {c}"),
        }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::SL => "sl",
        Family::PSL => "psl",
        Family::Q => "q",
        _ => "gl",
    }
}

#[derive(Clone, Debug)]
pub struct ExplicitModule {
    pub model: AlgebraModel,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// rho of each element of model.basis(), in order.
    pub action: Vec<Matrix>,
    pub highest_weight: Weight,
    pub label: String,
}

impl ExplicitModule {
    pub fn dim(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    fn from_units(
        model: AlgebraModel,
        even_dim: usize,
        odd_dim: usize,
        units: &dyn Fn(usize, usize) -> Matrix,
        highest_weight: Weight,
        label: String,
    ) -> Result<Self> {
        let d = even_dim + odd_dim;
        let size = model.matrix_size();
        let mut cache: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        let mut action = Vec::new();
        for be in model.basis() {
            let mut acc = Matrix::zeros(d, d);
            for (a, b, c) in be.matrix.nonzero_entries() {
                debug_assert!(a < size && b < size);
                let u = cache.entry((a, b)).or_insert_with(|| units(a, b));
                acc = &acc + &u.scale(c);
            }
            action.push(acc);
        }
        let module = ExplicitModule { model, even_dim, odd_dim, action, highest_weight, label };
        module.check_relations()?;
        Ok(module)
    }

    /// rho(x) by linearity.
    pub fn act(&self, x: &Matrix) -> Result<Matrix> {
        let basis: Vec<Matrix> = self.model.basis().into_iter().map(|b| b.matrix).collect();
        let Some(cs) = coordinates(&basis, x) else {
            bail!(Invalid, "element is not in {}", self.model.name());
        };
        let d = self.dim();
        let mut acc = Matrix::zeros(d, d);
        for (c, m) in cs.iter().zip(&self.action) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        Ok(acc)
    }

    /// Dimension of the space killed by the positive root vectors of the
    /// standard Borel.
    pub fn singular_dim(&self) -> Result<usize> {
        let k = self.model.matrix_size();
        let d = self.dim();
        let mut rows = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let r = self.act(&self.model.unit(a, b))?;
                rows.extend((0..d).map(|i| (0..d).map(|j| r.get(i, j).clone()).collect::<Vec<_>>()));
            }
        }
        Ok(d - reduce(rows, d).rows)
    }

    fn is_parity(&self, m: &Matrix, odd: bool) -> bool {
        m.nonzero_entries().all(|(i, j, _)| ((i < self.even_dim) != (j < self.even_dim)) == odd)
    }

    /// Grading and the super Jacobi relations on all basis pairs.
    pub fn check_relations(&self) -> Result<()> {
        let basis = self.model.basis();
        for (x, rx) in basis.iter().zip(&self.action) {
            if !self.is_parity(rx, x.odd) {
                bail!(Invariant, "{}: rho({}) has the wrong parity", self.label, x.label);
            }
        }
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let lhs = self.act(&self.model.superbracket(&x.matrix, &y.matrix))?;
                let (rx, ry) = (&self.action[i], &self.action[j]);
                let mut rhs = rx * ry;
                let yx = ry * rx;
                rhs = if x.odd && y.odd { &rhs + &yx } else { &rhs - &yx };
                if lhs != rhs {
                    bail!(Invariant, "{}: relation fails on [{}, {}]", self.label, x.label, y.label);
                }
            }
        }
        Ok(())
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for (i, j, x) in a.nonzero_entries() {
        for (k, l, y) in b.nonzero_entries() {
            out.set(i * b.rows + k, j * b.cols + l, x * y);
        }
    }
    out
}

/// Kac module Lambda(g_-1) tensor L0 with the standard Borel.
struct Kac {
    m: usize,
    n: usize,
    /// rho_0 on units of gl(m) + gl(n)
    l0: BTreeMap<(usize, usize), Matrix>,
    d0: usize,
    /// g_-1 generators E_{m+j, i}
    gens: Vec<(usize, usize)>,
}

type State = BTreeMap<u32, Vec<GR>>;

impl Kac {
    fn new(eps: &GlModule, delta: &GlModule) -> Self {
        let (m, n) = (eps.n, delta.n);
        let (de, dd) = (eps.dim(), delta.dim());
        let mut l0 = BTreeMap::new();
        for a in 0..m {
            for b in 0..m {
                l0.insert((a, b), kron(&eps.unit(a, b), &Matrix::identity(dd)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                l0.insert((m + a, m + b), kron(&Matrix::identity(de), &delta.unit(a, b)));
            }
        }
        let gens = (0..m).flat_map(|i| (0..n).map(move |j| (m + j, i))).collect();
        Kac { m, n, l0, d0: de * dd, gens }
    }

    fn size(&self) -> usize {
        self.m + self.n
    }

    fn unit_parity_odd(&self, a: usize, b: usize) -> bool {
        (a < self.m) != (b < self.m)
    }

    fn add(out: &mut State, mask: u32, v: &[GR], c: &GR) {
        let e = out.entry(mask).or_insert_with(|| vec![GR::zero(); v.len()]);
        for (x, y) in e.iter_mut().zip(v) {
            *x += &(c * y);
        }
    }

    fn wedge(k: usize, mask: u32, v: &[GR], c: &GR, out: &mut State) {
        if mask >> k & 1 == 1 {
            return;
        }
        let below = (mask & ((1u32 << k) - 1)).count_ones();
        let s = if below % 2 == 0 { c.clone() } else { -c.clone() };
        Self::add(out, mask | 1 << k, v, &s);
    }

    fn bracket(&self, a: usize, b: usize, k: usize) -> Vec<(usize, usize, GR)> {
        let x = Matrix::unit(self.size(), a, b);
        let (r, c) = self.gens[k];
        let xi = Matrix::unit(self.size(), r, c);
        let sign = if self.unit_parity_odd(a, b) { GR::one() } else { GR::int(-1) };
        // [x, xi] = x xi - (-1)^{|x|} xi x
        let br = &(&x * &xi) + &(&xi * &x).scale(&sign);
        br.nonzero_entries().map(|(i, j, v)| (i, j, v.clone())).collect()
    }

    /// c * E_ab acting on the wedge monomial `mask` tensor v.
    fn act(&self, a: usize, b: usize, c: &GR, mask: u32, v: &[GR], out: &mut State) {
        let (m, n) = (self.m, self.n);
        if a >= m && b < m {
            let k = (0..self.gens.len()).find(|&k| self.gens[k] == (a, b)).unwrap();
            Self::wedge(k, mask, v, c, out);
            return;
        }
        let positive = a < m && b >= m;
        if mask == 0 {
            if !positive {
                let w = self.l0[&(a, b)].mul_vec(v);
                Self::add(out, 0, &w, c);
            }
            return;
        }
        let f = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << f);
        for (i, j, bc) in self.bracket(a, b, f) {
            self.act(i, j, &(c * &bc), rest, v, out);
        }
        let mut tmp = State::new();
        self.act(a, b, c, rest, v, &mut tmp);
        let sign = if positive { GR::int(-1) } else { GR::one() };
        for (mk, w) in tmp {
            Self::wedge(f, mk, &w, &sign, out);
        }
        let _ = n;
    }

    fn basis(&self) -> (Vec<(u32, usize)>, usize) {
        let nmask = 1u32 << self.gens.len();
        let mut even: Vec<(u32, usize)> = Vec::new();
        let mut odd = Vec::new();
        for mask in 0..nmask {
            for j in 0..self.d0 {
                if mask.count_ones() % 2 == 0 {
                    even.push((mask, j));
                } else {
                    odd.push((mask, j));
                }
            }
        }
        let e = even.len();
        even.extend(odd);
        (even, e)
    }

    fn unit_matrix(&self, basis: &[(u32, usize)], a: usize, b: usize) -> Matrix {
        let index: BTreeMap<(u32, usize), usize> = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let d = basis.len();
        let mut out = Matrix::zeros(d, d);
        for (col, &(mask, j)) in basis.iter().enumerate() {
            let mut v = vec![GR::zero(); self.d0];
            v[j] = GR::one();
            let mut st = State::new();
            self.act(a, b, &GR::one(), mask, &v, &mut st);
            for (mk, w) in st {
                for (jj, x) in w.into_iter().enumerate() {
                    if !x.is_zero() {
                        out.add_at(index[&(mk, jj)], col, &x);
                    }
                }
            }
        }
        out
    }
}

pub fn build_module(recipe: &ModuleRecipe) -> Result<ExplicitModule> {
    let label = recipe.to_string();
    match recipe {
        ModuleRecipe::Kac { family, eps, delta } => {
            if !matches!(family, Family::GL | Family::SL) {
                bail!(Unsupported, "Kac modules over {}", family_name(*family));
            }
            let model = build_algebra(*family, eps.n, delta.n)?;
            let kac = Kac::new(eps, delta);
            if kac.gens.len() > 16 {
                bail!(Unsupported, "Kac module too large");
            }
            let (basis, even) = kac.basis();
            let hw: Vec<GR> = eps.highest_weight().into_iter().chain(delta.highest_weight()).collect();
            let hw = Weight::new(hw, eps.n);
            let units = |a, b| kac.unit_matrix(&basis, a, b);
            ExplicitModule::from_units(model, even, basis.len() - even, &units, hw, label)
        }
        ModuleRecipe::Supertrace { m, n, c } => {
            let model = build_algebra(Family::GL, *m, *n)?;
            let hw = Weight::new((0..m + n).map(|a| c * &GR::int(model.index_sign(a))).collect(), *m);
            let units = |a: usize, b: usize| {
                let mut u = Matrix::zeros(1, 1);
                if a == b {
                    u.set(0, 0, c * &GR::int(model.index_sign(a)));
                }
                u
            };
            ExplicitModule::from_units(model.clone(), 1, 0, &units, hw, label)
        }
        ModuleRecipe::SymPower { family, n, k } => {
            if !matches!(family, Family::GL | Family::SL) {
                bail!(Unsupported, "symmetric powers over {}", family_name(*family));
            }
            let model = build_algebra(*family, *n, 0)?;
            let g = GlModule { n: *n, k: *k, shift: GR::zero() };
            let hw = Weight::new(g.highest_weight(), *n);
            ExplicitModule::from_units(model, g.dim(), 0, &|a, b| g.unit(a, b), hw, label)
        }
        ModuleRecipe::QNatural { n } => {
            let model = build_algebra(Family::Q, 0, *n)?;
            let mut w = vec![GR::zero(); *n];
            w[0] = GR::one();
            let hw = Weight::new(w, *n);
            ExplicitModule::from_units(model, *n, *n, &|a, b| Matrix::unit(2 * n, a, b), hw, label)
        }
        ModuleRecipe::QOne { c } => {
            let model = build_algebra(Family::Q, 0, 1)?;
            let half = c * &GR::ratio(1, 2);
            let units = |a: usize, b: usize| match (a, b) {
                (0, 1) => Matrix::from_rows(vec![vec![GR::zero(), c.clone()], vec![GR::zero(), GR::zero()]]),
                (1, 0) => Matrix::unit(2, 1, 0),
                _ => Matrix::identity(2).scale(&half),
            };
            ExplicitModule::from_units(model, 1, 1, &units, Weight::new(vec![c.clone()], 1), label)
        }
    }
}

/// Basis of {P : P X_i = s_i Y_i P for all i} with P of the given parity.
fn intertwiners(even_dim: usize, dim: usize, odd: bool, eqs: &[(Matrix, Matrix, GR)]) -> Vec<Matrix> {
    let unknowns: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| ((i < even_dim) != (j < even_dim)) == odd)
        .collect();
    let nu = unknowns.len();
    let mut rows: Vec<Vec<GR>> = Vec::new();
    let mut sys = Matrix::zeros(0, nu);
    for (x, y, s) in eqs {
        for r in 0..dim {
            for c in 0..dim {
                let mut row = vec![GR::zero(); nu];
                let mut any = false;
                for (u, &(i, j)) in unknowns.iter().enumerate() {
                    let mut v = GR::zero();
                    if r == i {
                        v += x.get(j, c);
                    }
                    if c == j {
                        v -= &(s * y.get(r, i));
                    }
                    if !v.is_zero() {
                        any = true;
                        row[u] = v;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        // keep the system reduced as it grows
        if rows.len() > 2 * nu {
            rows.extend((0..sys.rows).map(|r| (0..nu).map(|c| sys.get(r, c).clone()).collect()));
            sys = reduce(std::mem::take(&mut rows), nu);
        }
    }
    rows.extend((0..sys.rows).map(|r| (0..nu).map(|c| sys.get(r, c).clone()).collect()));
    let sys = reduce(rows, nu);
    let full = if sys.rows == 0 { Matrix::zeros(1, nu) } else { sys };
    full.nullspace()
        .into_iter()
        .map(|v| {
            let mut p = Matrix::zeros(dim, dim);
            for (u, &(i, j)) in unknowns.iter().enumerate() {
                p.set(i, j, v[u].clone());
            }
            p
        })
        .collect()
}

fn reduce(rows: Vec<Vec<GR>>, cols: usize) -> Matrix {
    if rows.is_empty() {
        return Matrix::zeros(0, cols);
    }
    let mut m = Matrix::from_rows(rows);
    let rank = m.rref().len();
    m.submatrix(0, 0, rank, cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub datum: SymmetryDatum,
    pub endotype: Endotype,
    /// complex dimensions of the even and odd commutant
    pub commutant: (usize, usize),
    /// complex dimensions of the even and odd antilinear intertwiner spaces
    pub antilinear: (usize, usize),
}

/// Sign of A conj(A), which must be a nonzero real scalar.
fn square_sign(a: &Matrix) -> Result<i8> {
    let sq = a * &a.conj();
    let c = sq.get(0, 0).clone();
    if sq != Matrix::identity(a.rows).scale(&c) {
        bail!(Invariant, "T^2 is not scalar");
    }
    match c.real_sign() {
        Some(s) if s != 0 => Ok(s as i8),
        _ => bail!(Invariant, "T^2 = {c} is not a nonzero real number"),
    }
}

/// Solves for the commutant and for antilinear T = A o conj with
/// A conj(rho(x)) = rho(tau x) A, then reads off the symmetry datum.
pub fn symmetry_datum_bruteforce(w: &ExplicitModule, tau: &InvolutionSpec) -> Result<OracleResult> {
    let model = &w.model;
    let tau = make_involution(tau.clone(), model)?;
    let basis = model.basis();
    let (e, d) = (w.even_dim, w.dim());
    let comm = |odd: bool| {
        let eqs: Vec<(Matrix, Matrix, GR)> = basis
            .iter()
            .zip(&w.action)
            .map(|(x, r)| (r.clone(), r.clone(), if odd && x.odd { GR::int(-1) } else { GR::one() }))
            .collect();
        intertwiners(e, d, odd, &eqs)
    };
    let (c_even, c_odd) = (comm(false).len(), comm(true).len());
    if c_even != 1 || c_odd > 1 {
        bail!(Precondition, "{} is not irreducible: commutant has dimension {c_even}|{c_odd}", w.label);
    }
    // the modules are generated by a highest weight vector
    if !model.is_q() && w.singular_dim()? != 1 {
        bail!(Precondition, "{} is not irreducible: extra singular vectors", w.label);
    }
    let mut eqs = Vec::new();
    for (x, r) in basis.iter().zip(&w.action) {
        eqs.push((r.conj(), w.act(&tau.apply(&x.matrix))?, GR::one()));
    }
    let t_even = intertwiners(e, d, false, &eqs);
    let t_odd = intertwiners(e, d, true, &eqs);
    if t_even.len() > 1 || t_odd.len() > 1 {
        bail!(Invariant, "{}: antilinear intertwiners of dimension {}|{}", w.label, t_even.len(), t_odd.len());
    }
    let sign = |sols: &[Matrix]| -> Result<Option<i8>> {
        let Some(a) = sols.first() else { return Ok(None) };
        let s = square_sign(a)?;
        // rescaling by a complex number keeps the sign
        if square_sign(&a.scale(&GR::from_parts((2, 1), (-1, 1))))? != s {
            bail!(Invariant, "sign of T^2 depends on the solution");
        }
        Ok(Some(s))
    };
    let datum = SymmetryDatum { pi: c_odd == 1, b: sign(&t_even)?, pib: sign(&t_odd)? };
    let endotype = endotype_of_datum(&datum)?;
    let row = datum_row(endotype);
    let enriched = 2 * (c_even + c_odd + t_even.len() + t_odd.len());
    let expected = row.real_dim * if row.e_is_w { 4 } else { 1 };
    if enriched != expected {
        bail!(Invariant, "{}: enriched commutant has real dimension {enriched}, expected {expected}", w.label);
    }
    Ok(OracleResult { datum, endotype, commutant: (c_even, c_odd), antilinear: (t_even.len(), t_odd.len()) })
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub module: ModuleRecipe,
    pub tau: InvolutionSpec,
}

fn g(re: (i64, i64), im: (i64, i64)) -> GR {
    GR::from_parts(re, im)
}

fn gl11(a: GR, b: GR) -> ModuleRecipe {
    ModuleRecipe::Kac { family: Family::GL, eps: GlModule::character(1, a), delta: GlModule::character(1, b) }
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: &str, module: ModuleRecipe, tau: InvolutionSpec| {
        out.push(CatalogEntry { name: format!("{name}: {module}"), module, tau });
    };
    // gl(1|1), split
    for (a, b) in [(1, 1), (2, -1), (3, 0), (-1, -2)] {
        push("gl(1|1) split", gl11(GR::int(a), GR::int(b)), InvolutionSpec::Split);
    }
    push("gl(1|1) split", gl11(g((1, 2), (1, 1)), GR::int(1)), InvolutionSpec::Split);
    push("gl(1|1) split", ModuleRecipe::Supertrace { m: 1, n: 1, c: GR::int(2) }, InvolutionSpec::Split);
    // u(1,0|1,0)
    let compact = InvolutionSpec::compact(1, 1);
    for (a, b) in [
        (g((1, 2), (1, 1)), g((-1, 2), (2, 1))),
        (g((1, 2), (2, 1)), g((-1, 2), (1, 1))),
        (g((1, 2), (-2, 1)), g((-1, 2), (-3, 1))),
        (g((1, 2), (0, 1)), g((-1, 2), (3, 1))),
        (g((0, 1), (1, 1)), g((0, 1), (2, 1))),
        (g((0, 1), (3, 1)), g((0, 1), (-2, 1))),
        (g((1, 1), (0, 1)), g((2, 1), (0, 1))),
    ] {
        push("u(1,0|1,0)", gl11(a, b), compact.clone());
    }
    push("u(1,0|0,1)", gl11(g((1, 2), (1, 1)), g((-1, 2), (2, 1))), InvolutionSpec::unitary_pqrs(1, 0, 0, 1));
    // gl(1|1) with the conjugated block swap
    for (a, b) in [(g((1, 1), (1, 1)), g((1, 1), (-1, 1))), (GR::int(2), GR::int(3)), (GR::int(1), GR::int(2))] {
        push("gl(1|1) qbar", gl11(a, b), InvolutionSpec::QBar);
    }
    // sl(1|1) quotients of Kac modules
    for tau in [InvolutionSpec::Split, compact.clone()] {
        push(
            "sl(1|1)",
            ModuleRecipe::Kac { family: Family::SL, eps: GlModule::character(1, GR::int(2)), delta: GlModule::character(1, GR::int(1)) },
            tau,
        );
    }
    // u(1,0|2,0) Kac modules
    let c12 = InvolutionSpec::compact(1, 2);
    let kac12 = |a: GR, k: usize, b: GR| ModuleRecipe::Kac {
        family: Family::GL,
        eps: GlModule::character(1, a),
        delta: GlModule { n: 2, k, shift: b },
    };
    push("u(1,0|2,0)", kac12(g((1, 1), (1, 1)), 0, g((-1, 2), (2, 1))), c12.clone());
    push("u(1,0|2,0)", kac12(g((1, 1), (-2, 1)), 0, g((-1, 2), (0, 1))), c12.clone());
    push("u(1,0|2,0)", kac12(g((1, 1), (1, 1)), 1, g((-1, 1), (1, 1))), c12.clone());
    push("u(1,0|2,0)", kac12(GR::int(3), 0, GR::int(1)), c12.clone());
    push("gl(1|2) split", kac12(GR::int(3), 0, GR::int(1)), InvolutionSpec::Split);
    // su(n) and sl(n, R) symmetric powers
    for n in 2..=3 {
        for k in 0..=4 {
            push(&format!("su({n})"), ModuleRecipe::SymPower { family: Family::SL, n, k }, InvolutionSpec::compact(n, 0));
        }
    }
    for k in 1..=2 {
        push("sl(2,R)", ModuleRecipe::SymPower { family: Family::SL, n: 2, k }, InvolutionSpec::Split);
        push("su(1,1)", ModuleRecipe::SymPower { family: Family::SL, n: 2, k }, InvolutionSpec::unitary_pqrs(1, 1, 0, 0));
    }
    push("u(2)", ModuleRecipe::SymPower { family: Family::GL, n: 2, k: 1 }, InvolutionSpec::compact(2, 0));
    // q(n) natural modules
    for n in 1..=2 {
        push(&format!("q({n}) split"), ModuleRecipe::QNatural { n }, InvolutionSpec::Split);
        for phase in [GR::i(), -GR::i()] {
            for signs in [vec![1; n], vec![-1; n]] {
                push(&format!("q({n}) unitary"), ModuleRecipe::QNatural { n }, InvolutionSpec::QUnitary { signs, phase: phase.clone() });
            }
        }
    }
    for c in [GR::int(-1), GR::int(2), GR::i(), -GR::int(2) * GR::i()] {
        push("q(1) split", ModuleRecipe::QOne { c: c.clone() }, InvolutionSpec::Split);
        push("q(1) unitary", ModuleRecipe::QOne { c }, InvolutionSpec::QUnitary { signs: vec![1], phase: GR::i() });
    }
    out
}

/// Real Clifford superalgebra on anticommuting odd generators with squares
/// +-1, optionally tensored over R with C (an even central J, J^2 = -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSuperalgebra {
    pub squares: Vec<i8>,
    pub complex: bool,
}

/// Basis monomial: product of the generators in `mask`, times J if `j`.
type Monomial = (u32, bool);

impl CliffordSuperalgebra {
    /// A representative of each Brauer-Wall class.
    pub fn representative(e: Endotype) -> Self {
        match e {
            Endotype::Real(0) => CliffordSuperalgebra { squares: vec![1, -1], complex: false },
            Endotype::Real(k) => {
                // q - p = k mod 8 with few generators
                let (p, q) = if k <= 4 { (0, k as usize) } else { (8 - k as usize, 0) };
                CliffordSuperalgebra { squares: [vec![1; p], vec![-1; q]].concat(), complex: false }
            }
            Endotype::Complex(k) => CliffordSuperalgebra { squares: vec![-1; k as usize], complex: true },
        }
    }

    /// Graded tensor product; over C when both factors are complex.
    pub fn tensor(&self, o: &Self) -> Self {
        CliffordSuperalgebra { squares: [self.squares.clone(), o.squares.clone()].concat(), complex: self.complex || o.complex }
    }

    fn basis(&self) -> Vec<Monomial> {
        let js: &[bool] = if self.complex { &[false, true] } else { &[false] };
        (0..1u32 << self.squares.len()).flat_map(|m| js.iter().map(move |&j| (m, j))).collect()
    }

    fn odd(x: Monomial) -> bool {
        x.0.count_ones() % 2 == 1
    }

    /// x y = sign * monomial.
    fn mul(&self, x: Monomial, y: Monomial) -> (i8, Monomial) {
        let mut sign = 1i8;
        for i in 0..self.squares.len() {
            if y.0 >> i & 1 == 1 {
                // move generator i of y past the generators of x above i
                if (x.0 >> (i + 1)).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                if x.0 >> i & 1 == 1 {
                    sign *= self.squares[i];
                }
            }
        }
        if x.1 && y.1 {
            sign = -sign;
        }
        (sign, (x.0 ^ y.0, x.1 ^ y.1))
    }

    fn square_sign(&self, x: Monomial) -> i8 {
        let (s, m) = self.mul(x, x);
        debug_assert_eq!(m, (0, false));
        s
    }

    fn commute(&self, x: Monomial, y: Monomial) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Central monomials of the span of `within` (the centre is spanned by them).
    fn center(&self, within: &[Monomial]) -> Vec<Monomial> {
        within.iter().copied().filter(|&x| within.iter().all(|&y| self.commute(x, y))).collect()
    }

    /// Signature sign of the regular trace form; distinct monomials are
    /// trace-orthogonal, so only squares contribute.
    fn trace_form_sign(&self, within: &[Monomial]) -> i64 {
        within.iter().map(|&x| i64::from(self.square_sign(x))).sum::<i64>().signum()
    }

    /// Brauer-Wall class from the centre, the graded centre and trace forms.
    pub fn classify(&self) -> Result<Endotype> {
        let all = self.basis();
        let even: Vec<Monomial> = all.iter().copied().filter(|&x| !Self::odd(x)).collect();
        let super_center: Vec<Monomial> = even
            .iter()
            .copied()
            .filter(|&x| all.iter().all(|&y| self.commute(x, y)))
            .collect();
        let center = self.center(&all);
        match (super_center.len(), center.len()) {
            (2, 2) => return Ok(Endotype::Complex(0)),
            (2, 4) => return Ok(Endotype::Complex(1)),
            (1, 1) | (1, 2) => {}
            other => bail!(Invariant, "not a central division superalgebra class: centres {other:?}"),
        }
        let odd_class = center.len() == 2;
        let (simple, centre_of): (&[Monomial], Vec<Monomial>) =
            if odd_class { (&even, center.clone()) } else { (&all, self.center(&even)) };
        let Some(&z) = centre_of.iter().find(|&&x| x != (0, false)) else {
            bail!(Invariant, "centre is too small");
        };
        let quaternionic = self.trace_form_sign(simple) < 0;
        let split = self.square_sign(z) > 0;
        let k = match (odd_class, quaternionic, split) {
            (false, false, true) => 0,
            (false, true, false) => 2,
            (false, true, true) => 4,
            (false, false, false) => 6,
            (true, false, false) => 1,
            (true, true, true) => 3,
            (true, true, false) => 5,
            (true, false, true) => 7,
        };
        Ok(Endotype::Real(k))
    }
}

/// Product of two classes computed through explicit Clifford superalgebras.
pub fn bw_product_bruteforce(a: Endotype, b: Endotype) -> Result<Endotype> {
    CliffordSuperalgebra::representative(a).tensor(&CliffordSuperalgebra::representative(b)).classify()
}
