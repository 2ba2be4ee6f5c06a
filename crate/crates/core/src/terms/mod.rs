//! Integer-coefficient arithmetic in the Cohn path algebra `C(E)` and the
//! Leavitt path algebra `L(E)` of a finite graph.
//!
//! Elements are finite sums of monomials `αβ*` with `r(α) = r(β)`. In
//! `C(E)` these form a basis. In `L(E)` a monomial is reduced when `α` and
//! `β` do not both end in the special edge of a regular vertex (its last
//! out-edge in input order); such monomials form a basis and
//! [`Term::normal_form`] rewrites into it.

mod parse;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;

pub use parse::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermError {
    AmbientMismatch,
    GraphMismatch,
    UnknownGenerator(alloc::string::String),
    Syntax(ParseError),
    NotRegular,
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::AmbientMismatch => write!(f, "terms live in different algebras"),
            TermError::GraphMismatch => write!(f, "terms are over different graphs"),
            TermError::UnknownGenerator(id) => write!(f, "unknown generator '{id}'"),
            TermError::Syntax(e) => e.fmt(f),
            TermError::NotRegular => write!(f, "graph has a sink"),
        }
    }
}

impl From<ParseError> for TermError {
    fn from(e: ParseError) -> Self {
        TermError::Syntax(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Cohn,
    Leavitt,
}

/// A finite path: a start vertex and composable edges, all by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    /// Checks composability against `g`.
    pub fn new(g: &Graph, start: usize, edges: Vec<usize>) -> Option<Self> {
        let mut at = start;
        for &e in &edges {
            let edge = g.edges().get(e)?;
            if edge.src != at {
                return None;
            }
            at = edge.dst;
        }
        (start < g.num_vertices()).then_some(Path { start, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges()[e].dst)
    }

    /// `q = self · rest`, returning `rest`.
    fn strip_prefix(&self, q: &Path, g: &Graph) -> Option<Path> {
        if self.start != q.start || !q.edges.starts_with(&self.edges) {
            return None;
        }
        Some(Path { start: self.range(g), edges: q.edges[self.edges.len()..].to_vec() })
    }

    fn concat(&self, rest: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&rest.edges);
        Path { start: self.start, edges }
    }
}

/// `αβ*` with `r(α) = r(β)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    fn star(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    fn mul(&self, other: &Monomial, g: &Graph) -> Option<Monomial> {
        // (αβ*)(γδ*): either γ = βγ' giving αγ'δ*, or β = γβ' giving α(δβ')*.
        if let Some(rest) = self.beta.strip_prefix(&other.alpha, g) {
            Some(Monomial { alpha: self.alpha.concat(&rest), beta: other.beta.clone() })
        } else {
            other.alpha.strip_prefix(&self.beta, g).map(|rest| Monomial {
                alpha: self.alpha.clone(),
                beta: other.beta.concat(&rest),
            })
        }
    }
}

/// Special edge of each vertex: its last out-edge, for regular vertices.
fn special_edges(g: &Graph) -> Vec<Option<usize>> {
    (0..g.num_vertices()).map(|v| g.out_edges(v).last().copied()).collect()
}

/// An element of `C(E)` or `L(E)`; Leavitt terms are kept in normal form.
#[derive(Clone)]
pub struct Term<'g> {
    graph: &'g Graph,
    ambient: Ambient,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for Term<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.graph, other.graph) && self.ambient == other.ambient && self.coeffs == other.coeffs
    }
}

impl Eq for Term<'_> {}

impl fmt::Debug for Term<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({:?}, {self})", self.ambient)
    }
}

/// Entry point: builds terms over a fixed graph and ambient algebra.
#[derive(Clone, Copy, Debug)]
pub struct PathAlgebra<'g> {
    graph: &'g Graph,
    ambient: Ambient,
}

impl<'g> PathAlgebra<'g> {
    pub fn new(graph: &'g Graph, ambient: Ambient) -> Self {
        PathAlgebra { graph, ambient }
    }

    pub fn cohn(graph: &'g Graph) -> Self {
        Self::new(graph, Ambient::Cohn)
    }

    pub fn leavitt(graph: &'g Graph) -> Self {
        Self::new(graph, Ambient::Leavitt)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn zero(&self) -> Term<'g> {
        Term { graph: self.graph, ambient: self.ambient, coeffs: BTreeMap::new() }
    }

    /// `c · αβ*`, normalized in the Leavitt ambient.
    pub fn monomial(&self, m: Monomial, c: BigInt) -> Term<'g> {
        let mut t = self.zero();
        t.add_to(m, c);
        t.normalized()
    }

    /// `Σ_v v`.
    pub fn one(&self) -> Term<'g> {
        let mut t = self.zero();
        for v in 0..self.graph.num_vertices() {
            t.add_to(Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }, BigInt::one());
        }
        t.normalized()
    }

    pub fn scalar(&self, c: impl Into<BigInt>) -> Term<'g> {
        self.one().scale(&c.into())
    }

    fn vertex_at(&self, v: usize) -> Term<'g> {
        self.monomial(Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }, BigInt::one())
    }

    fn edge_at(&self, e: usize) -> Term<'g> {
        let edge = &self.graph.edges()[e];
        let m = Monomial { alpha: Path { start: edge.src, edges: alloc::vec![e] }, beta: Path::vertex(edge.dst) };
        self.monomial(m, BigInt::one())
    }

    /// The generator with the given id: a vertex or an edge.
    pub fn generator(&self, id: &str) -> Result<Term<'g>, TermError> {
        if let Some(v) = self.graph.vertex_index(id) {
            Ok(self.vertex_at(v))
        } else if let Some(e) = self.graph.edge_index(id) {
            Ok(self.edge_at(e))
        } else {
            Err(TermError::UnknownGenerator(id.into()))
        }
    }

    /// The ghost edge `e*`.
    pub fn ghost(&self, id: &str) -> Result<Term<'g>, TermError> {
        Ok(self.generator(id)?.star())
    }

    pub fn vertices(&self) -> Vec<Term<'g>> {
        (0..self.graph.num_vertices()).map(|v| self.vertex_at(v)).collect()
    }

    pub fn edges(&self) -> Vec<Term<'g>> {
        (0..self.graph.num_edges()).map(|e| self.edge_at(e)).collect()
    }

    /// Parses the term grammar: ids, postfix `*`, juxtaposition for
    /// products, `+`, `-`, integer literals and parentheses.
    pub fn parse(&self, expr: &str) -> Result<Term<'g>, TermError> {
        parse::parse(self, expr)
    }
}

impl<'g> Term<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn algebra(&self) -> PathAlgebra<'g> {
        PathAlgebra { graph: self.graph, ambient: self.ambient }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    fn add_to(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    fn compatible(&self, other: &Term<'_>) -> Result<(), TermError> {
        if !core::ptr::eq(self.graph, other.graph) {
            return Err(TermError::GraphMismatch);
        }
        if self.ambient != other.ambient {
            return Err(TermError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Term<'g>) -> Result<Term<'g>, TermError> {
        self.compatible(other)?;
        let mut t = self.clone();
        for (m, c) in &other.coeffs {
            t.add_to(m.clone(), c.clone());
        }
        Ok(t)
    }

    pub fn sub(&self, other: &Term<'g>) -> Result<Term<'g>, TermError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Term<'g> {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Term<'g> {
        let mut t = self.algebra().zero();
        if !c.is_zero() {
            t.coeffs = self.coeffs.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        }
        t
    }

    pub fn mul(&self, other: &Term<'g>) -> Result<Term<'g>, TermError> {
        self.compatible(other)?;
        let mut t = self.algebra().zero();
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                if let Some(m) = m1.mul(m2, self.graph) {
                    t.add_to(m, c1 * c2);
                }
            }
        }
        Ok(t.normalized())
    }

    fn normalized(self) -> Term<'g> {
        match self.ambient {
            Ambient::Cohn => self,
            Ambient::Leavitt => self.normal_form(),
        }
    }

    /// Monomials `αβ*` in which `α` and `β` both end in the same special
    /// edge, in term order.
    pub fn reducible_monomials(&self) -> Vec<Monomial> {
        if self.ambient == Ambient::Cohn {
            return Vec::new();
        }
        let special = special_edges(self.graph);
        self.coeffs.keys().filter(|m| reducible(m, self.graph, &special)).cloned().collect()
    }

    /// Applies `e_n e_n* → v − Σ_{i<n} e_i e_i*` to the `pick`-th reducible
    /// monomial (counted modulo their number), or returns `None` if the
    /// term is already reduced.
    pub fn reduce_once(&self, pick: usize) -> Option<Term<'g>> {
        let candidates = self.reducible_monomials();
        if candidates.is_empty() {
            return None;
        }
        let m = &candidates[pick % candidates.len()];
        let c = self.coeffs[m].clone();
        let mut t = self.clone();
        t.coeffs.remove(m);
        for (r, sign) in rewrite(m, self.graph) {
            t.add_to(r, if sign { c.clone() } else { -c.clone() });
        }
        Some(t)
    }

    /// The fixpoint of [`Term::reduce_once`]. Identity in the Cohn ambient.
    pub fn normal_form(&self) -> Term<'g> {
        if self.ambient == Ambient::Cohn {
            return self.clone();
        }
        let special = special_edges(self.graph);
        let mut t = self.clone();
        // Rewriting shortens the special suffix, so longest monomials go first.
        loop {
            let Some(m) = t
                .coeffs
                .keys()
                .filter(|m| reducible(m, self.graph, &special))
                .max_by_key(|m| m.alpha.len() + m.beta.len())
                .cloned()
            else {
                return t;
            };
            let c = t.coeffs.remove(&m).expect("present");
            for (r, sign) in rewrite(&m, self.graph) {
                t.add_to(r, if sign { c.clone() } else { -c.clone() });
            }
        }
    }

    /// Image under the quotient map `C(E) → L(E)`.
    pub fn to_leavitt(&self) -> Term<'g> {
        self.as_leavitt_unreduced().normal_form()
    }

    /// The same sum of monomials read in `L(E)` without rewriting, for
    /// driving [`Term::reduce_once`] by hand.
    pub fn as_leavitt_unreduced(&self) -> Term<'g> {
        Term { graph: self.graph, ambient: Ambient::Leavitt, coeffs: self.coeffs.clone() }
    }

    /// The standard involution `αβ* ↦ βα*`.
    pub fn star(&self) -> Term<'g> {
        let mut t = self.algebra().zero();
        for (m, c) in &self.coeffs {
            t.add_to(m.star(), c.clone());
        }
        t
    }

    /// The signed involution: `star` twisted by `(−1)^{|α|+|β|}`, so that
    /// `ē = −e*`.
    pub fn bar(&self) -> Term<'g> {
        let mut t = self.algebra().zero();
        for (m, c) in &self.coeffs {
            let odd = (m.alpha.len() + m.beta.len()) % 2 == 1;
            t.add_to(m.star(), if odd { -c.clone() } else { c.clone() });
        }
        t
    }

    /// The common degree `|α| − |β|` of all monomials; `None` for
    /// inhomogeneous terms and for zero.
    pub fn grade(&self) -> Option<i64> {
        let mut degrees = self.coeffs.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// [`Term::grade`] reduced mod 2.
    pub fn grade_mod2(&self) -> Option<u8> {
        self.grade().map(|d| d.rem_euclid(2) as u8)
    }

    /// Degree in the even/odd grading, which can exist when
    /// [`Term::grade`] does not (as for `e + e*`).
    pub fn parity(&self) -> Option<u8> {
        let mut parities = self.coeffs.keys().map(|m| (m.degree().rem_euclid(2)) as u8);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    /// `ρ(x)` on a finitely supported vector of paths, for `x ∈ C(E)`.
    pub fn rho_apply(&self, vec: &PathVector) -> Result<PathVector, TermError> {
        if self.ambient != Ambient::Cohn {
            return Err(TermError::AmbientMismatch);
        }
        let mut out = PathVector::new();
        for (m, c) in &self.coeffs {
            for (gamma, x) in vec {
                if let Some(rest) = m.beta.strip_prefix(gamma, self.graph) {
                    let p = m.alpha.concat(&rest);
                    let entry = out.entry(p.clone()).or_insert_with(BigInt::zero);
                    *entry += c * x;
                    if entry.is_zero() {
                        out.remove(&p);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Finitely supported integer vectors indexed by paths.
pub type PathVector = BTreeMap<Path, BigInt>;

fn reducible(m: &Monomial, g: &Graph, special: &[Option<usize>]) -> bool {
    match (m.alpha.edges.last(), m.beta.edges.last()) {
        (Some(&a), Some(&b)) => a == b && special[g.edges()[a].src] == Some(a),
        _ => false,
    }
}

/// `α'e e*β'* ↦ α'β'* − Σ_{f ≠ e, s(f) = s(e)} α'f f*β'*`, as monomials
/// with signs.
fn rewrite(m: &Monomial, g: &Graph) -> Vec<(Monomial, bool)> {
    let e = *m.alpha.edges.last().expect("reducible");
    let v = g.edges()[e].src;
    let trim = |p: &Path| Path { start: p.start, edges: p.edges[..p.edges.len() - 1].to_vec() };
    let (a, b) = (trim(&m.alpha), trim(&m.beta));
    let mut out = alloc::vec![(Monomial { alpha: a.clone(), beta: b.clone() }, true)];
    for f in g.out_edges(v) {
        if f != e {
            let ext = |p: &Path| {
                let mut edges = p.edges.clone();
                edges.push(f);
                Path { start: p.start, edges }
            };
            out.push((Monomial { alpha: ext(&a), beta: ext(&b) }, false));
        }
    }
    out
}

/// Checks `Σ_e e ē = −1` in `L(E)` for a regular graph.
pub fn verify_minus_one_identity(g: &Graph) -> Result<bool, TermError> {
    if !g.is_regular() {
        return Err(TermError::NotRegular);
    }
    let alg = PathAlgebra::leavitt(g);
    let mut sum = alg.zero();
    for e in alg.edges() {
        sum = sum.add(&e.mul(&e.bar())?)?;
    }
    Ok(sum == alg.one().neg())
}

impl fmt::Display for Term<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !c.abs().is_one() {
                write!(f, "{} ", c.abs())?;
            }
            write_monomial(f, m, self.graph)?;
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, g: &Graph) -> fmt::Result {
    if m.alpha.is_empty() && m.beta.is_empty() {
        return f.write_str(&g.vertices()[m.alpha.start]);
    }
    let mut first = true;
    let mut sep = |f: &mut fmt::Formatter<'_>| {
        let r = if first { Ok(()) } else { f.write_str(" ") };
        first = false;
        r
    };
    for &e in &m.alpha.edges {
        sep(f)?;
        f.write_str(&g.edges()[e].id)?;
    }
    for &e in m.beta.edges.iter().rev() {
        sep(f)?;
        write!(f, "{}*", g.edges()[e].id)?;
    }
    Ok(())
}
