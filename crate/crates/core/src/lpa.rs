//! Exact arithmetic in the Leavitt path algebra over the rationals.
//!
//! Elements are finite rational combinations of monomials `s_α s_β*` with
//! `r(α) = r(β)`. Products follow the rule
//!
//! ```text
//! (s_α s_β*)(s_γ s_δ*) = s_{αγ'} s_δ*    if γ = βγ'
//!                      = s_α s_{δβ'}*    if β = γβ'
//!                      = 0               otherwise
//! ```
//!
//! which already encodes every relation except the expansion
//! `p_v = Σ_{s(e)=v} s_e s_e*` at regular vertices. On acyclic graphs without
//! infinite emitters, applying that expansion until every common range is a
//! sink gives a canonical form, so equality is decidable there.
//!
//! # Text form
//!
//! ```text
//! element  := "0" | term (("+" | "-") term)*
//! term     := ["-"] [rational "*"] monomial
//! monomial := "p_" vertex | path | path "*" | path "." path "*"
//! path     := vertex | edge ("," edge)*
//! edge     := bundle ["#" index]
//! ```
//!
//! `path` alone is `s_α`, `path*` is `s_β*`, and `α.β*` is `s_α s_β*`.
//! For example `3/2*e,f.w* - p_u`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::boundary::{self, ClassSize};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Path, VertexId, VertexSet};
use crate::linalg::{format_rational, parse_rational, rational, Rational};

/// `s_α s_β*` with `r(α) = r(β)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.alpha.len(), self.beta.len(), &self.alpha, &self.beta).cmp(&(
            other.alpha.len(),
            other.beta.len(),
            &other.alpha,
            &other.beta,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(alpha: Path, beta: Path) -> Result<Monomial> {
        if alpha.range() != beta.range() {
            return Err(Error::InvalidPath(
                "the two paths of a monomial must share their range".into(),
            ));
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// `s_α`.
    pub fn path(alpha: Path) -> Monomial {
        let beta = Path::vertex(alpha.range());
        Monomial { alpha, beta }
    }

    /// `s_β*`.
    pub fn path_star(beta: Path) -> Monomial {
        let alpha = Path::vertex(beta.range());
        Monomial { alpha, beta }
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Monomial {
        Monomial::path(Path::edge(g, e))
    }

    pub fn edge_star(g: &Graph, e: EdgeRef) -> Monomial {
        Monomial::path_star(Path::edge(g, e))
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn range(&self) -> VertexId {
        self.alpha.range()
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            let alpha = self.alpha.concat(&rest).expect("ranges agree");
            return Some(Monomial {
                alpha,
                beta: other.beta.clone(),
            });
        }
        if let Some(rest) = self.beta.strip_prefix(&other.alpha) {
            let beta = other.beta.concat(&rest).expect("ranges agree");
            return Some(Monomial {
                alpha: self.alpha.clone(),
                beta,
            });
        }
        None
    }

    pub fn render(&self, g: &Graph) -> String {
        match (self.alpha.is_vertex(), self.beta.is_vertex()) {
            (true, true) => format!("p_{}", g.vertex_name(self.alpha.source())),
            (false, true) => g.render_path(&self.alpha),
            (true, false) => format!("{}*", g.render_path(&self.beta)),
            (false, false) => format!(
                "{}.{}*",
                g.render_path(&self.alpha),
                g.render_path(&self.beta)
            ),
        }
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if let Some(name) = text.strip_prefix("p_") {
            if let Ok(v) = g.vertex_id(name) {
                return Ok(Monomial::vertex(v));
            }
        }
        match text.strip_suffix('*') {
            None => {
                let alpha = g.parse_path(text)?;
                Ok(Monomial::path(alpha))
            }
            Some(body) => match body.split_once('.') {
                None => Ok(Monomial::path_star(g.parse_path(body)?)),
                Some((a, b)) => Monomial::new(g.parse_path(a)?, g.parse_path(b)?),
            },
        }
    }
}

/// A finite rational combination of monomials with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Element { terms }
    }
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn vertex(v: VertexId) -> Element {
        Monomial::vertex(v).into()
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Element {
        Monomial::edge(g, e).into()
    }

    pub fn edge_star(g: &Graph, e: EdgeRef) -> Element {
        Monomial::edge_star(g, e).into()
    }

    pub fn term(q: Rational, m: Monomial) -> Element {
        let mut x = Element::zero();
        x.add_term(m, q);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(q);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += q;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Element {
        if q.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some(m) = a.mul(b) {
                    out.add_term(m, p * q);
                }
            }
        }
        out
    }

    pub fn star(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (m.star(), q.clone()))
                .collect(),
        }
    }

    /// Homogeneous components by degree `|α| − |β|`.
    pub fn degree_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, q) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let negative = q.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = q.abs();
            if !magnitude.is_one() {
                out.push_str(&format_rational(&magnitude));
                out.push('*');
            }
            out.push_str(&m.render(g));
        }
        out
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Element> {
        let text = text.trim();
        if text == "0" {
            return Ok(Element::zero());
        }
        let mut out = Element::zero();
        for (sign, term) in split_terms(text)? {
            let (coeff, mono) = match term.split_once('*') {
                Some((c, rest)) if !rest.is_empty() && parse_rational(c).is_some() => {
                    (parse_rational(c).expect("checked"), rest)
                }
                _ => (Rational::one(), term),
            };
            let m = Monomial::parse(g, mono)
                .map_err(|e| Error::Parse(format!("in term `{term}`: {e}")))?;
            out.add_term(m, coeff * rational(sign));
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Result<Vec<(i64, &str)>> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    if bytes.first() == Some(&b'-') {
        sign = -1;
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            let term = text[start..i].trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            out.push((sign, term));
            sign = if bytes[i] == b'-' { -1 } else { 1 };
            start = i + 1;
        }
        i += 1;
    }
    let term = text[start..].trim();
    if term.is_empty() {
        return Err(Error::Parse(format!("empty term in `{text}`")));
    }
    out.push((sign, term));
    Ok(out)
}

/// `p_v − Σ s_e s_e*` over the finitely many edges from `v` leaving `h`.
pub fn gap_projection(g: &Graph, h: &VertexSet, v: VertexId) -> Result<Element> {
    let breaking = g.breaking_vertices(h)?;
    if !g.is_saturated(h) {
        return Err(Error::Contract(format!(
            "{{{}}} is not saturated",
            g.set_names(h).join(",")
        )));
    }
    if !breaking.contains(&v) {
        return Err(Error::Contract(format!(
            "`{}` is not a breaking vertex",
            g.vertex_name(v)
        )));
    }
    let mut x = Element::vertex(v);
    for &b in g.outgoing(v) {
        let bundle = g.bundle(b);
        if h.contains(&bundle.range) {
            continue;
        }
        let m = bundle
            .multiplicity
            .finite()
            .expect("breaking vertices escape finitely");
        for i in 0..m {
            let p = Path::edge(g, EdgeRef::new(b, i));
            let proj = Monomial::new(p.clone(), p).expect("same path");
            x.add_term(proj, -Rational::one());
        }
    }
    Ok(x)
}

fn require_finite_acyclic(g: &Graph) -> Result<()> {
    if g.has_omega() {
        return Err(Error::Unsupported("graph has an infinite emitter".into()));
    }
    if g.has_cycle() {
        return Err(Error::Unsupported("graph has a cycle".into()));
    }
    Ok(())
}

/// Rewrites `x` in the basis of monomials whose common range is a sink.
pub fn normal_form(g: &Graph, x: &Element) -> Result<Element> {
    require_finite_acyclic(g)?;
    let mut out = Element::zero();
    let mut work: Vec<(Monomial, Rational)> = x
        .terms
        .iter()
        .map(|(m, q)| (m.clone(), q.clone()))
        .collect();
    while let Some((m, q)) = work.pop() {
        let v = m.range();
        if !g.is_regular(v) {
            out.add_term(m, q);
            continue;
        }
        for e in g.edges_from(v)? {
            let mut alpha = m.alpha.clone();
            let mut beta = m.beta.clone();
            alpha.push(g, e);
            beta.push(g, e);
            work.push((Monomial { alpha, beta }, q.clone()));
        }
    }
    Ok(out)
}

pub fn equals(g: &Graph, x: &Element, y: &Element) -> Result<bool> {
    Ok(normal_form(g, x)? == normal_form(g, y)?)
}

/// Dimension of the algebra: the sum over sinks `t` of the square of the
/// number of paths ending at `t`.
pub fn dimension(g: &Graph) -> Result<u64> {
    require_finite_acyclic(g)?;
    let mut total: u64 = 0;
    for t in g.sinks() {
        let ClassSize::Finite(n) = boundary::paths_into(g, t)? else {
            unreachable!("finite acyclic graphs have finitely many paths");
        };
        total = n
            .checked_mul(n)
            .and_then(|sq| sq.checked_add(total))
            .ok_or_else(|| Error::Overflow("computing the dimension".into()))?;
    }
    Ok(total)
}

/// The basis `{s_α s_β* : r(α) = r(β) a sink}`, sink by sink.
pub fn sink_basis(g: &Graph) -> Result<Vec<Monomial>> {
    require_finite_acyclic(g)?;
    let mut out = Vec::new();
    for t in g.sinks() {
        let paths = boundary::paths_ending_at(g, t, g.vertex_count(), 0);
        for a in &paths {
            for b in &paths {
                out.push(Monomial {
                    alpha: a.clone(),
                    beta: b.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(g: &Graph, s: &str) -> Element {
        Element::parse(g, s).unwrap()
    }

    #[test]
    fn products_on_the_line() {
        let g = fixtures::line3();
        assert_eq!(el(&g, "e*").mul(&el(&g, "e")), el(&g, "p_v"));
        assert!(el(&g, "e*").mul(&el(&g, "f")).is_zero());
        assert_eq!(el(&g, "e").mul(&el(&g, "f")), el(&g, "e,f"));
        assert_eq!(el(&g, "p_u").mul(&el(&g, "e")), el(&g, "e"));
        assert!(el(&g, "p_v").mul(&el(&g, "e")).is_zero());
    }

    #[test]
    fn star_and_linear_structure() {
        let g = fixtures::line3();
        let e = el(&g, "e");
        assert_eq!(e.star(), el(&g, "e*"));
        let x = el(&g, "3/2*e,f.w* - p_u + f*");
        assert_eq!(x.star().star(), x);
        let pv = el(&g, "p_v");
        assert!(pv.add(&pv.scale(&rational(-1))).is_zero());
    }

    #[test]
    fn grading() {
        let g = fixtures::line3();
        let comps = el(&g, "e,f").degree_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), [2]);
        assert_eq!(el(&g, "p_v").degree_components()[&0], el(&g, "p_v"));
        let g = fixtures::fork();
        let comps = el(&g, "e + f*").degree_components();
        assert_eq!(comps[&1], el(&g, "e"));
        assert_eq!(comps[&-1], el(&g, "f*"));
    }

    #[test]
    fn text_round_trip() {
        let g = fixtures::line3();
        for s in [
            "0",
            "p_u",
            "e,f",
            "f*",
            "e,f.e,f*",
            "-2*p_w + 1/3*e*",
            "3/2*e,f - p_u",
        ] {
            let x = el(&g, s);
            assert_eq!(el(&g, &x.render(&g)), x, "{s}");
        }
        assert_eq!(el(&g, "3/2*e,f.w*").render(&g), "3/2*e,f");
        assert!(Element::parse(&g, "e.f*").is_err());
        assert!(Element::parse(&g, "p_q").is_err());
        assert!(Element::parse(&g, "e + ").is_err());
    }

    #[test]
    fn gap_projection_of_omega2() {
        let g = fixtures::omega2();
        let h = g.vertex_set(["w"]).unwrap();
        let v = g.vertex_id("v").unwrap();
        let p = gap_projection(&g, &h, v).unwrap();
        assert_eq!(p, el(&g, "p_v - g.g*"));
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.star(), p);
        assert!(gap_projection(&g, &h, g.vertex_id("u").unwrap()).is_err());
    }

    #[test]
    fn normal_forms() {
        let g = fixtures::line3();
        assert_eq!(normal_form(&g, &el(&g, "p_u")).unwrap(), el(&g, "e,f.e,f*"));
        assert_eq!(normal_form(&g, &el(&g, "p_w")).unwrap(), el(&g, "p_w"));
        assert!(equals(&g, &el(&g, "p_u"), &el(&g, "e,f.e,f*")).unwrap());
        assert!(!equals(&g, &el(&g, "p_u"), &el(&g, "p_v")).unwrap());
        let g = fixtures::fork();
        assert_eq!(
            normal_form(&g, &el(&g, "p_u")).unwrap(),
            el(&g, "e.e* + f.f*")
        );
        assert!(matches!(
            normal_form(&fixtures::loop1(), &Element::zero()),
            Err(Error::Unsupported(_))
        ));
        assert!(normal_form(&fixtures::omega(), &Element::zero()).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&fixtures::line3()).unwrap(), 9);
        assert_eq!(dimension(&fixtures::fork()).unwrap(), 8);
        assert_eq!(dimension(&fixtures::point()).unwrap(), 1);
        assert_eq!(dimension(&fixtures::entry4()).unwrap(), 16);
        assert_eq!(sink_basis(&fixtures::fork()).unwrap().len(), 8);
    }
}
