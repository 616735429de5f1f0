//! Finite presentations of compactly supported rational cohomology rings.
//!
//! A [`CohomologyPresentation`] stores the graded dimensions of `H_c^*(M; ℚ)`
//! and the cup product as structure constants on a fixed basis. Classes are
//! addressed by [`ClassId`] `(deg, idx)`. Presentations are immutable once
//! built; loading from JSON fills in products implied by graded commutativity
//! and, for closed manifolds, by the unit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, int, parse_rational, Rational};

/// A basis class `x_{deg, idx}` of `H_c^deg(M; ℚ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub deg: usize,
    pub idx: usize,
}

impl ClassId {
    pub fn new(deg: usize, idx: usize) -> Self {
        Self { deg, idx }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.deg, self.idx)
    }
}

/// Rational linear combination of basis classes; zero coefficients are never stored.
pub type Combination = BTreeMap<ClassId, Rational>;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    Invalid(ValidationReport),
    #[error("graded commutativity violated: {a}∪{b} and {b}∪{a} are listed inconsistently")]
    Conflict { a: ClassId, b: ClassId },
    #[error("duplicate product entry for {a}∪{b}")]
    Duplicate { a: ClassId, b: ClassId },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid parameter for preset `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
}

/// Finite model of `H_c^*(M; ℚ)` for an orientable manifold `M` of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPresentation {
    name: String,
    dim: usize,
    closed: bool,
    orientable: bool,
    hc_dims: Vec<usize>,
    cup: BTreeMap<(ClassId, ClassId), Combination>,
}

impl CohomologyPresentation {
    /// Builds a presentation from raw parts without completing or validating it.
    pub fn from_parts(
        name: impl Into<String>,
        dim: usize,
        closed: bool,
        orientable: bool,
        hc_dims: Vec<usize>,
        products: impl IntoIterator<Item = ((ClassId, ClassId), Combination)>,
    ) -> Self {
        let mut cup = BTreeMap::new();
        for (key, mut value) in products {
            value.retain(|_, c| !c.is_zero());
            if !value.is_empty() {
                cup.insert(key, value);
            }
        }
        Self { name: name.into(), dim, closed, orientable, hc_dims, cup }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn hc_dims(&self) -> &[usize] {
        &self.hc_dims
    }

    pub fn hc_dim(&self, deg: usize) -> usize {
        self.hc_dims.get(deg).copied().unwrap_or(0)
    }

    /// Stored structure constants, keyed by ordered pairs of classes.
    pub fn products(&self) -> &BTreeMap<(ClassId, ClassId), Combination> {
        &self.cup
    }

    /// Basis classes in (degree, index) order.
    pub fn classes(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.hc_dims
            .iter()
            .enumerate()
            .flat_map(|(deg, &count)| (0..count).map(move |idx| ClassId::new(deg, idx)))
    }

    /// `a ∪ b`; `None` when the product is zero.
    pub fn product(&self, a: ClassId, b: ClassId) -> Option<&Combination> {
        self.cup.get(&(a, b))
    }

    /// Copy with a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self { name: name.into(), ..self.clone() }
    }

    /// Copy with the `closed` flag overridden (used to probe validation).
    pub fn with_closed_flag(&self, closed: bool) -> Self {
        Self { closed, ..self.clone() }
    }

    /// Alternating sum `Σ_j (-1)^j dim H_c^j`; equals `χ(M)` in even dimension.
    pub fn euler_char(&self) -> i64 {
        self.hc_dims
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `k = dim H_c^1(M) = dim H_{d-1}(M; ℚ)`.
    pub fn k_invariant(&self) -> usize {
        self.hc_dim(1)
    }

    fn multiply(&self, left: &Combination, right: &Combination) -> Combination {
        let mut out = Combination::new();
        for (a, ca) in left {
            for (b, cb) in right {
                if let Some(prod) = self.product(*a, *b) {
                    for (c, cc) in prod {
                        *out.entry(*c).or_insert_with(Rational::zero) += ca * cb * cc;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Fills `b∪a` from `a∪b` by graded commutativity and, for closed
    /// presentations, `1∪x = x∪1 = x`. Explicitly listed pairs must agree.
    fn complete(mut self) -> Result<Self, PresentationError> {
        let listed: Vec<_> = self.cup.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((a, b), value) in listed {
            let s = graded_sign(a, b);
            let mirrored: Combination = value.iter().map(|(c, x)| (*c, &s * x)).collect();
            match self.cup.get(&(b, a)) {
                Some(existing) if *existing != mirrored => {
                    return Err(PresentationError::Conflict { a, b });
                }
                Some(_) => {}
                None => {
                    self.cup.insert((b, a), mirrored);
                }
            }
        }
        if self.closed && self.hc_dim(0) == 1 {
            let unit = ClassId::new(0, 0);
            let classes: Vec<_> = self.classes().collect();
            for x in classes {
                let single: Combination = [(x, Rational::one())].into_iter().collect();
                self.cup.entry((unit, x)).or_insert_with(|| single.clone());
                self.cup.entry((x, unit)).or_insert(single);
            }
        }
        Ok(self)
    }

    /// Checks every structural invariant; never fails, violations are data.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let d = self.dim;
        if d == 0 || d % 2 == 1 {
            violations.push(Violation::new(Rule::EvenDimension, vec![d], "dimension must be positive and even"));
        }
        if !self.orientable {
            violations.push(Violation::new(Rule::Orientable, vec![], "manifold must be orientable"));
        }
        if self.hc_dims.len() != d + 1 {
            violations.push(Violation::new(
                Rule::HcDimsLength,
                vec![self.hc_dims.len()],
                "hc_dims must have length dim+1",
            ));
            return ValidationReport { violations };
        }
        if self.hc_dims[d] != 1 {
            violations.push(Violation::new(Rule::TopClass, vec![d], "hc_dims[dim] must be 1 (connected)"));
        }
        self.check_unit(&mut violations);
        self.check_entries(&mut violations);
        self.check_commutativity(&mut violations);
        self.check_associativity(&mut violations);
        if self.closed && self.hc_dim(0) == 1 && self.hc_dims[d] == 1 {
            self.check_pairing(&mut violations);
        }
        ValidationReport { violations }
    }

    fn check_unit(&self, out: &mut Vec<Violation>) {
        if !self.closed {
            if self.hc_dims[0] != 0 {
                out.push(Violation::new(Rule::ClosedUnit, vec![0], "open manifold must have hc_dims[0] = 0"));
            }
            return;
        }
        if self.hc_dims[0] != 1 {
            out.push(Violation::new(
                Rule::ClosedUnit,
                vec![0],
                "closed manifold needs exactly one degree-0 class acting as unit",
            ));
            return;
        }
        let unit = ClassId::new(0, 0);
        for x in self.classes() {
            let single: Combination = [(x, Rational::one())].into_iter().collect();
            for (l, r) in [(unit, x), (x, unit)] {
                if self.product(l, r) != Some(&single) {
                    out.push(Violation::new(
                        Rule::ClosedUnit,
                        vec![l.deg, l.idx, r.deg, r.idx],
                        format!("{l}∪{r} must equal {x}"),
                    ));
                }
            }
        }
    }

    fn in_range(&self, c: ClassId) -> bool {
        c.idx < self.hc_dim(c.deg) && c.deg <= self.dim
    }

    fn check_entries(&self, out: &mut Vec<Violation>) {
        for ((a, b), value) in &self.cup {
            let idx = vec![a.deg, a.idx, b.deg, b.idx];
            if !self.in_range(*a) || !self.in_range(*b) {
                out.push(Violation::new(Rule::IndexRange, idx, format!("product {a}∪{b} names a missing class")));
                continue;
            }
            if a.deg + b.deg > self.dim {
                out.push(Violation::new(
                    Rule::DegreeAdditivity,
                    idx,
                    format!("product {a}∪{b} lands above the top degree"),
                ));
                continue;
            }
            for c in value.keys() {
                if c.deg != a.deg + b.deg {
                    out.push(Violation::new(
                        Rule::DegreeAdditivity,
                        idx.clone(),
                        format!("{a}∪{b} has a term {c} in the wrong degree"),
                    ));
                } else if !self.in_range(*c) {
                    out.push(Violation::new(
                        Rule::IndexRange,
                        idx.clone(),
                        format!("{a}∪{b} has a term {c} outside the basis"),
                    ));
                }
            }
        }
    }

    fn check_commutativity(&self, out: &mut Vec<Violation>) {
        let zero = Combination::new();
        for ((a, b), value) in &self.cup {
            if a > b {
                // (b, a) side is checked from the other key or flagged below.
                if self.cup.contains_key(&(*b, *a)) {
                    continue;
                }
            }
            let other = self.product(*b, *a).unwrap_or(&zero);
            let expected: Combination = value
                .iter()
                .map(|(c, v)| (*c, graded_sign(*a, *b) * v))
                .collect();
            if *other != expected {
                out.push(Violation::new(
                    Rule::GradedCommutativity,
                    vec![a.deg, a.idx, b.deg, b.idx],
                    format!("{a}∪{b} ≠ (-1)^(|a||b|) {b}∪{a}"),
                ));
            }
        }
    }

    fn check_associativity(&self, out: &mut Vec<Violation>) {
        let classes: Vec<_> = self.classes().collect();
        for &x in &classes {
            for &y in &classes {
                for &z in &classes {
                    if x.deg + y.deg + z.deg > self.dim {
                        continue;
                    }
                    let single = |c: ClassId| -> Combination { [(c, Rational::one())].into_iter().collect() };
                    let left = self.multiply(&self.multiply(&single(x), &single(y)), &single(z));
                    let right = self.multiply(&single(x), &self.multiply(&single(y), &single(z)));
                    if left != right {
                        out.push(Violation::new(
                            Rule::Associativity,
                            vec![x.deg, x.idx, y.deg, y.idx, z.deg, z.idx],
                            format!("({x}∪{y})∪{z} ≠ {x}∪({y}∪{z})"),
                        ));
                    }
                }
            }
        }
    }

    /// Matrix of `⟨x_{j,a} ∪ x_{d-j,b}⟩`, the coefficient on the top class.
    pub fn pairing_matrix(&self, j: usize) -> Vec<Vec<Rational>> {
        let top = ClassId::new(self.dim, 0);
        (0..self.hc_dim(j))
            .map(|a| {
                (0..self.hc_dim(self.dim - j))
                    .map(|b| {
                        self.product(ClassId::new(j, a), ClassId::new(self.dim - j, b))
                            .and_then(|c| c.get(&top).cloned())
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect()
            })
            .collect()
    }

    fn check_pairing(&self, out: &mut Vec<Violation>) {
        for j in 0..=self.dim {
            let rows = self.hc_dim(j);
            let cols = self.hc_dim(self.dim - j);
            if rows != cols || dense_rank(self.pairing_matrix(j)) != rows {
                out.push(Violation::new(
                    Rule::PoincarePairing,
                    vec![j],
                    format!("Poincaré pairing in degree {j} is singular"),
                ));
            }
        }
    }

    /// Parses and completes a manifold-description document, then validates it.
    pub fn from_json(document: &str) -> Result<Self, PresentationError> {
        let doc: PresentationDoc =
            serde_json::from_str(document).map_err(|e| PresentationError::Parse(e.to_string()))?;
        if doc.hc_dims.len() != doc.dim + 1 {
            return Err(PresentationError::Parse(format!(
                "hc_dims has length {} but dim is {}",
                doc.hc_dims.len(),
                doc.dim
            )));
        }
        let mut products: BTreeMap<(ClassId, ClassId), Combination> = BTreeMap::new();
        for entry in doc.cup {
            let a = ClassId::new(entry.deg_a, entry.idx_a);
            let b = ClassId::new(entry.deg_b, entry.idx_b);
            for c in [a, b] {
                if doc.hc_dims.get(c.deg).is_none_or(|&dim| c.idx >= dim) {
                    return Err(PresentationError::Parse(format!("cup entry names {c}, which is not a basis class")));
                }
            }
            let mut value = Combination::new();
            for term in entry.result {
                let coeff = term.coeff.to_rational()?;
                *value.entry(ClassId::new(term.deg, term.idx)).or_insert_with(Rational::zero) += coeff;
            }
            value.retain(|_, c| !c.is_zero());
            if products.insert((a, b), value).is_some() {
                return Err(PresentationError::Duplicate { a, b });
            }
        }
        let pres = Self::from_parts(doc.name, doc.dim, doc.closed, doc.orientable, doc.hc_dims, products)
            .complete()?;
        let report = pres.validate();
        if report.passed() {
            Ok(pres)
        } else {
            Err(PresentationError::Invalid(report))
        }
    }

    /// Serializes to the manifold-description JSON schema.
    pub fn to_json(&self) -> String {
        let cup = self
            .cup
            .iter()
            .map(|((a, b), value)| CupEntryDoc {
                deg_a: a.deg,
                idx_a: a.idx,
                deg_b: b.deg,
                idx_b: b.idx,
                result: value
                    .iter()
                    .map(|(c, v)| TermDoc { deg: c.deg, idx: c.idx, coeff: CoeffDoc::Text(format_rational(v)) })
                    .collect(),
            })
            .collect();
        let doc = PresentationDoc {
            name: self.name.clone(),
            dim: self.dim,
            closed: self.closed,
            orientable: self.orientable,
            hc_dims: self.hc_dims.clone(),
            cup,
        };
        serde_json::to_string_pretty(&doc).expect("presentation serializes")
    }
}

/// `(-1)^{|a||b|}`.
fn graded_sign(a: ClassId, b: ClassId) -> Rational {
    if a.deg * b.deg % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    EvenDimension,
    Orientable,
    HcDimsLength,
    TopClass,
    ClosedUnit,
    IndexRange,
    DegreeAdditivity,
    GradedCommutativity,
    Associativity,
    PoincarePairing,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::EvenDimension => "even_dimension",
            Rule::Orientable => "orientable",
            Rule::HcDimsLength => "hc_dims_length",
            Rule::TopClass => "top_class",
            Rule::ClosedUnit => "closed_unit",
            Rule::IndexRange => "index_range",
            Rule::DegreeAdditivity => "degree_additivity",
            Rule::GradedCommutativity => "graded_commutativity",
            Rule::Associativity => "associativity",
            Rule::PoincarePairing => "poincare_pairing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub indices: Vec<usize>,
    pub message: String,
}

impl Violation {
    fn new(rule: Rule, indices: Vec<usize>, message: impl Into<String>) -> Self {
        Self { rule, indices, message: message.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "ok");
        }
        let parts: Vec<_> = self
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.rule.as_str(), v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    name: String,
    dim: usize,
    closed: bool,
    orientable: bool,
    hc_dims: Vec<usize>,
    #[serde(default)]
    cup: Vec<CupEntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct CupEntryDoc {
    deg_a: usize,
    idx_a: usize,
    deg_b: usize,
    idx_b: usize,
    result: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    deg: usize,
    idx: usize,
    coeff: CoeffDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Text(String),
    Integer(i64),
}

impl CoeffDoc {
    fn to_rational(&self) -> Result<Rational, PresentationError> {
        match self {
            CoeffDoc::Integer(v) => Ok(int(*v)),
            CoeffDoc::Text(s) => {
                parse_rational(s).ok_or_else(|| PresentationError::Parse(format!("bad rational `{s}`")))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Presets

/// One line of the preset catalog.
pub struct PresetInfo {
    pub usage: &'static str,
    pub summary: &'static str,
}

pub const PRESET_CATALOG: &[PresetInfo] = &[
    PresetInfo { usage: "s2", summary: "2-sphere" },
    PresetInfo { usage: "sphere(2m)", summary: "even-dimensional sphere S^{2m}, manifold spec `sphere:2m`" },
    PresetInfo { usage: "t2", summary: "torus, same as sigma(1)" },
    PresetInfo { usage: "sigma(g)", summary: "closed genus-g surface, `sigma:g`" },
    PresetInfo {
        usage: "sigma_open(g)",
        summary: "genus-g surface minus a point, `sigma_open:g[,0]` (0 zeroes the degree-1 products)",
    },
    PresetInfo { usage: "cp(m)", summary: "complex projective space, `cp:m`" },
    PresetInfo { usage: "r2", summary: "the plane" },
    PresetInfo { usage: "r(2m)", summary: "euclidean space R^{2m}, `r:2m`" },
];

fn single(c: ClassId, coeff: i64) -> Combination {
    [(c, int(coeff))].into_iter().collect()
}

fn bad_param(name: &str, reason: impl Into<String>) -> PresentationError {
    PresentationError::InvalidParameter { name: name.to_string(), reason: reason.into() }
}

fn finish(pres: CohomologyPresentation) -> CohomologyPresentation {
    let pres = pres.complete().expect("preset products are consistent");
    debug_assert!(pres.validate().passed(), "{}", pres.validate());
    pres
}

fn sphere(dim: usize, name: String) -> CohomologyPresentation {
    let mut hc = vec![0; dim + 1];
    hc[0] = 1;
    hc[dim] = 1;
    finish(CohomologyPresentation::from_parts(name, dim, true, true, hc, []))
}

fn surface(genus: usize, closed: bool, products: bool, name: String) -> CohomologyPresentation {
    let top = ClassId::new(2, 0);
    let mut cup = Vec::new();
    if products {
        for i in 0..genus {
            let alpha = ClassId::new(1, 2 * i);
            let beta = ClassId::new(1, 2 * i + 1);
            cup.push(((alpha, beta), single(top, 1)));
        }
    }
    let hc = vec![usize::from(closed), 2 * genus, 1];
    finish(CohomologyPresentation::from_parts(name, 2, closed, true, hc, cup))
}

fn projective(m: usize) -> CohomologyPresentation {
    let dim = 2 * m;
    let mut hc = vec![0; dim + 1];
    let mut cup = Vec::new();
    for a in 0..=m {
        hc[2 * a] = 1;
        for b in 0..=m - a {
            cup.push(((ClassId::new(2 * a, 0), ClassId::new(2 * b, 0)), single(ClassId::new(2 * (a + b), 0), 1)));
        }
    }
    finish(CohomologyPresentation::from_parts(format!("cp({m})"), dim, true, true, hc, cup))
}

fn euclidean(dim: usize, name: String) -> CohomologyPresentation {
    let mut hc = vec![0; dim + 1];
    hc[dim] = 1;
    finish(CohomologyPresentation::from_parts(name, dim, false, true, hc, []))
}

fn even_dim_param(name: &str, params: &[u64]) -> Result<usize, PresentationError> {
    match params {
        [d] if *d >= 2 && d % 2 == 0 => Ok(*d as usize),
        [d] => Err(bad_param(name, format!("dimension {d} must be even and at least 2"))),
        _ => Err(bad_param(name, "expects one parameter (the dimension 2m)")),
    }
}

/// Named test manifolds. Parameterized names take their integers in `params`.
pub fn preset(name: &str, params: &[u64]) -> Result<CohomologyPresentation, PresentationError> {
    let no_params = |pres: CohomologyPresentation| {
        if params.is_empty() {
            Ok(pres)
        } else {
            Err(bad_param(name, "takes no parameters"))
        }
    };
    match name {
        "s2" => no_params(sphere(2, "s2".into())),
        "t2" => no_params(surface(1, true, true, "t2".into())),
        "r2" => no_params(euclidean(2, "r2".into())),
        "sphere" => {
            let d = even_dim_param(name, params)?;
            Ok(sphere(d, format!("sphere({d})")))
        }
        "r" => {
            let d = even_dim_param(name, params)?;
            Ok(euclidean(d, format!("r({d})")))
        }
        "sigma" => match params {
            [g] => Ok(surface(*g as usize, true, true, format!("sigma({g})"))),
            _ => Err(bad_param(name, "expects one parameter (the genus g)")),
        },
        "sigma_open" => match params {
            [g] => Ok(surface(*g as usize, false, true, format!("sigma_open({g})"))),
            [g, 1] => Ok(surface(*g as usize, false, true, format!("sigma_open({g})"))),
            [g, 0] => Ok(surface(*g as usize, false, false, format!("sigma_open({g},0)"))),
            _ => Err(bad_param(name, "expects the genus and an optional product flag 0|1")),
        },
        "cp" => match params {
            [m] if *m >= 1 => Ok(projective(*m as usize)),
            [m] => Err(bad_param(name, format!("m = {m} must be at least 1"))),
            _ => Err(bad_param(name, "expects one parameter (m)")),
        },
        _ => Err(PresentationError::UnknownPreset(name.to_string())),
    }
}

/// Parses `name[:p1[,p2]]` and looks the preset up.
pub fn preset_from_spec(spec: &str) -> Result<CohomologyPresentation, PresentationError> {
    let (name, params) = match spec.split_once(':') {
        Some((name, rest)) => {
            let params = rest
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| bad_param(name, format!("`{p}` is not an integer"))))
                .collect::<Result<Vec<_>, _>>()?;
            (name, params)
        }
        None => (spec, Vec::new()),
    };
    preset(name.trim(), &params)
}

/// Human-readable catalog, one preset per line.
pub fn list_presets() -> String {
    let mut out = String::new();
    for info in PRESET_CATALOG {
        let line = match info.usage {
            "s2" | "t2" | "r2" => {
                let p = preset(info.usage, &[]).expect("fixed preset");
                format!("{} {}", info.usage, describe(&p))
            }
            "sphere(2m)" => format!("{} d=2m closed hc=[1,0,...,0,1] k=0", info.usage),
            "sigma(g)" => format!("{} d=2 closed hc=[1,2g,1] k=2g", info.usage),
            "sigma_open(g)" => format!("{} d=2 open hc=[0,2g,1] k=2g", info.usage),
            "cp(m)" => format!("{} d=2m closed hc=[1,0,1,...,0,1] k=0", info.usage),
            "r(2m)" => format!("{} d=2m open hc=[0,...,0,1] k=0", info.usage),
            other => other.to_string(),
        };
        out.push_str(&format!("{line}  # {}\n", info.summary));
    }
    out
}

/// `d=2 closed hc=[1,2,1] k=2`.
pub fn describe(pres: &CohomologyPresentation) -> String {
    let hc: Vec<_> = pres.hc_dims().iter().map(usize::to_string).collect();
    format!(
        "d={} {} hc=[{}] k={}",
        pres.dim(),
        if pres.is_closed() { "closed" } else { "open" },
        hc.join(","),
        pres.k_invariant()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2_DOC: &str = r#"{
        "name": "s2", "dim": 2, "closed": true, "orientable": true, "hc_dims": [1, 0, 1],
        "cup": [{"deg_a": 0, "idx_a": 0, "deg_b": 2, "idx_b": 0,
                 "result": [{"deg": 2, "idx": 0, "coeff": "1"}]}]
    }"#;

    #[test]
    fn loads_sphere_document() {
        let pres = CohomologyPresentation::from_json(S2_DOC).unwrap();
        assert_eq!(pres.hc_dims(), &[1, 0, 1]);
        assert!(pres.validate().passed());
        assert_eq!(pres, preset("s2", &[]).unwrap());
    }

    #[test]
    fn rejects_wrong_hc_length() {
        let doc = S2_DOC.replace("[1, 0, 1]", "[1, 0]");
        assert!(matches!(CohomologyPresentation::from_json(&doc), Err(PresentationError::Parse(_))));
    }

    #[test]
    fn rejects_symmetric_torus_product() {
        let doc = r#"{
            "name": "bad", "dim": 2, "closed": true, "orientable": true, "hc_dims": [1, 2, 1],
            "cup": [
              {"deg_a": 1, "idx_a": 0, "deg_b": 1, "idx_b": 1, "result": [{"deg": 2, "idx": 0, "coeff": "1"}]},
              {"deg_a": 1, "idx_a": 1, "deg_b": 1, "idx_b": 0, "result": [{"deg": 2, "idx": 0, "coeff": "1"}]}
            ]
        }"#;
        let err = CohomologyPresentation::from_json(doc).unwrap_err();
        assert!(matches!(err, PresentationError::Conflict { .. }));
        assert!(err.to_string().contains("graded commutativity"));
    }

    #[test]
    fn rejects_duplicate_entries_and_bad_coefficients() {
        let doc = S2_DOC.replace(r#""coeff": "1""#, r#""coeff": "1/0""#);
        assert!(matches!(CohomologyPresentation::from_json(&doc), Err(PresentationError::Parse(_))));
        assert!(matches!(CohomologyPresentation::from_json("{"), Err(PresentationError::Parse(_))));
    }

    #[test]
    fn stored_asymmetry_is_reported() {
        let top = ClassId::new(2, 0);
        let a = ClassId::new(1, 0);
        let b = ClassId::new(1, 1);
        let pres = CohomologyPresentation::from_parts(
            "bad",
            2,
            true,
            true,
            vec![1, 2, 1],
            [((a, b), single(top, 1)), ((b, a), single(top, 1))],
        );
        let report = pres.validate();
        assert!(report.has(Rule::GradedCommutativity));
    }

    #[test]
    fn plane_forced_closed_fails_unit_rule() {
        let report = preset("r2", &[]).unwrap().with_closed_flag(true).validate();
        assert!(report.has(Rule::ClosedUnit));
    }

    #[test]
    fn degenerate_pairing_is_singular() {
        let pres = CohomologyPresentation::from_parts("deg", 2, true, true, vec![1, 1, 1], [])
            .complete()
            .unwrap();
        let report = pres.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, Rule::PoincarePairing);
        assert_eq!(report.violations[0].indices, vec![1]);
    }

    #[test]
    fn odd_dimension_and_non_orientable_rejected() {
        let pres = CohomologyPresentation::from_parts("odd", 3, true, false, vec![1, 0, 0, 1], []);
        let report = pres.validate();
        assert!(report.has(Rule::EvenDimension));
        assert!(report.has(Rule::Orientable));
    }

    #[test]
    fn associativity_violation_detected() {
        // x∪x = y, x∪y = z but y∪x = 2z: (x∪x)∪x ≠ x∪(x∪x).
        let x = ClassId::new(2, 0);
        let y = ClassId::new(4, 0);
        let z = ClassId::new(6, 0);
        let pres = CohomologyPresentation::from_parts(
            "nonassoc",
            6,
            true,
            true,
            vec![1, 0, 1, 0, 1, 0, 1],
            [((x, x), single(y, 1)), ((x, y), single(z, 1)), ((y, x), single(z, 2))],
        );
        assert!(pres.validate().has(Rule::Associativity));
    }

    #[test]
    fn preset_shapes() {
        assert_eq!(preset("cp", &[2]).unwrap().hc_dims(), &[1, 0, 1, 0, 1]);
        assert_eq!(preset("cp", &[2]).unwrap().dim(), 4);
        assert_eq!(preset("s2", &[]).unwrap().hc_dims(), &[1, 0, 1]);
        let open = preset("sigma_open", &[1]).unwrap();
        assert!(!open.is_closed());
        assert_eq!(open.hc_dims(), &[0, 2, 1]);
        assert_eq!(preset("sigma_open", &[1, 0]).unwrap().products().len(), 0);
        assert!(matches!(preset("nosuch", &[]), Err(PresentationError::UnknownPreset(_))));
        assert!(matches!(preset("cp", &[0]), Err(PresentationError::InvalidParameter { .. })));
        assert!(matches!(preset("r", &[3]), Err(PresentationError::InvalidParameter { .. })));
    }

    #[test]
    fn euler_and_k() {
        assert_eq!(preset("s2", &[]).unwrap().euler_char(), 2);
        assert_eq!(preset("sigma", &[2]).unwrap().euler_char(), -2);
        assert_eq!(preset("r2", &[]).unwrap().euler_char(), 1);
        assert_eq!(preset("t2", &[]).unwrap().k_invariant(), 2);
        assert_eq!(preset("s2", &[]).unwrap().k_invariant(), 0);
        assert_eq!(preset("sigma", &[2]).unwrap().k_invariant(), 4);
    }

    #[test]
    fn catalog_lines() {
        let text = list_presets();
        assert!(text.contains("t2 d=2 closed hc=[1,2,1] k=2"));
        assert!(text.contains("cp(m)"));
        assert!(text.contains("r(2m)"));
    }

    #[test]
    fn manifold_spec_grammar() {
        assert_eq!(preset_from_spec("sigma_open:1").unwrap().name(), "sigma_open(1)");
        assert_eq!(preset_from_spec("cp:3").unwrap().dim(), 6);
        assert!(preset_from_spec("cp:x").is_err());
    }
}
