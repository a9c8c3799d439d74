//! Arithmetic in Z/m[G], the distinguished elements T_τ, T_σ, C_i, B, and
//! free submodules with explicit bases.

use std::fmt;

use crate::groups::{GroupElement, MetacyclicGroup};
use crate::znz::arith::{add_mod, mul_mod, neg_mod, reduce, sub_mod};
use crate::znz::{free_rank, HowellForm, MatrixZn};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus or group mismatch between ring elements")]
    ModulusMismatch,
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("element is not in the span of basis {0}")]
    NotInSpan(String),
    #[error("basis {0} is not stable under the action of {1}")]
    NotStable(String, GroupElement),
    #[error("basis {0} is not linearly independent")]
    NotIndependent(String),
    #[error("cannot parse ring element: {0}")]
    Parse(String),
}

/// Element of Z/m[G], coefficients indexed by the canonical element order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    group: MetacyclicGroup,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn zero(group: MetacyclicGroup, modulus: u64) -> Self {
        RingElement {
            group,
            modulus,
            coeffs: vec![0; group.order()],
        }
    }

    pub fn one(group: MetacyclicGroup, modulus: u64) -> Self {
        Self::from_element(group, modulus, group.identity())
    }

    pub fn from_element(group: MetacyclicGroup, modulus: u64, g: GroupElement) -> Self {
        let mut x = Self::zero(group, modulus);
        x.coeffs[group.index(g)] = 1 % modulus;
        x
    }

    pub fn from_coeffs(group: MetacyclicGroup, modulus: u64, coeffs: Vec<u64>) -> Self {
        assert_eq!(
            coeffs.len(),
            group.order(),
            "coefficient array must have length |G|"
        );
        let coeffs = coeffs.into_iter().map(|c| c % modulus).collect();
        RingElement {
            group,
            modulus,
            coeffs,
        }
    }

    /// Σ c·g over the given signed terms.
    pub fn from_terms(group: MetacyclicGroup, modulus: u64, terms: &[(i64, GroupElement)]) -> Self {
        let mut x = Self::zero(group, modulus);
        for &(c, g) in terms {
            let k = group.index(g);
            x.coeffs[k] = add_mod(x.coeffs[k], reduce(c, modulus), modulus);
        }
        x
    }

    pub fn tau_pow(group: MetacyclicGroup, modulus: u64, k: i64) -> Self {
        Self::from_element(group, modulus, group.tau_pow(k))
    }

    pub fn sigma_pow(group: MetacyclicGroup, modulus: u64, k: i64) -> Self {
        Self::from_element(group, modulus, group.sigma_pow(k))
    }

    pub fn group(&self) -> MetacyclicGroup {
        self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: GroupElement) -> u64 {
        self.coeffs[self.group.index(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0, |acc, &c| add_mod(acc, c, self.modulus))
    }

    fn check(&self, other: &RingElement) -> Result<(), RingError> {
        if self.modulus != other.modulus || self.group != other.group {
            Err(RingError::ModulusMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| add_mod(a, b, m))
            .collect();
        Ok(RingElement {
            group: self.group,
            modulus: m,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| sub_mod(a, b, m))
            .collect();
        Ok(RingElement {
            group: self.group,
            modulus: m,
            coeffs,
        })
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let g = self.group;
        let m = self.modulus;
        let mut out = vec![0u64; g.order()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ga = g.element(a);
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = g.index(g.mul(ga, g.element(b)));
                out[k] = (out[k] + mul_mod(x, y, m)) % m;
            }
        }
        Ok(RingElement {
            group: g,
            modulus: m,
            coeffs: out,
        })
    }

    pub fn neg(&self) -> RingElement {
        let m = self.modulus;
        RingElement {
            group: self.group,
            modulus: m,
            coeffs: self.coeffs.iter().map(|&a| neg_mod(a, m)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> RingElement {
        let m = self.modulus;
        let c = reduce(c, m);
        RingElement {
            group: self.group,
            modulus: m,
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c, m)).collect(),
        }
    }

    /// g·x, a permutation of coefficients.
    pub fn left_translate(&self, g: GroupElement) -> RingElement {
        let grp = self.group;
        let mut out = vec![0u64; grp.order()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[grp.index(grp.mul(g, grp.element(k)))] = c;
            }
        }
        RingElement {
            group: grp,
            modulus: self.modulus,
            coeffs: out,
        }
    }

    /// Entrywise reduction to a divisor of the modulus.
    pub fn reduce_mod(&self, modulus: u64) -> RingElement {
        assert!(
            self.modulus.is_multiple_of(modulus),
            "target modulus must divide the current one"
        );
        RingElement {
            group: self.group,
            modulus,
            coeffs: self.coeffs.iter().map(|&a| a % modulus).collect(),
        }
    }

    /// Parses the printed grammar: terms "c·t^i s^j" joined by "+" or "-".
    pub fn parse(
        group: MetacyclicGroup,
        modulus: u64,
        text: &str,
    ) -> Result<RingElement, RingError> {
        parse_element(group, modulus, text)
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs)
            .expect("ring elements must share group and modulus")
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs)
            .expect("ring elements must share group and modulus")
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs)
            .expect("ring elements must share group and modulus")
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}

/// Product of ring elements with an explicit modulus check.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
    a.try_mul(b)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let g = self.group.element(k);
                format!("{}·t^{} s^{}", c, g.i, g.j)
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn parse_element(
    group: MetacyclicGroup,
    modulus: u64,
    text: &str,
) -> Result<RingElement, RingError> {
    let err = |msg: &str| RingError::Parse(format!("{msg} in '{text}'"));
    let cleaned = text.replace('−', "-");
    let trimmed = cleaned.trim();
    if trimmed.is_empty() {
        return Err(err("empty expression"));
    }
    let mut out = RingElement::zero(group, modulus);
    if trimmed == "0" {
        return Ok(out);
    }
    let mut pieces: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut pending_sign = false;
    let mut current = String::new();
    for ch in trimmed.chars() {
        if ch == '+' || ch == '-' {
            if current.trim().is_empty() {
                if pending_sign {
                    return Err(err("repeated sign"));
                }
            } else {
                pieces.push((sign, current.trim().to_string()));
                current.clear();
            }
            sign = if ch == '-' { -1 } else { 1 };
            pending_sign = true;
        } else {
            if !ch.is_whitespace() {
                pending_sign = false;
            }
            current.push(ch);
        }
    }
    if current.trim().is_empty() {
        return Err(err("dangling sign"));
    }
    pieces.push((sign, current.trim().to_string()));
    for (sign, piece) in pieces {
        let (coeff, mono) = match piece.split_once(['·', '*']) {
            Some((c, m)) => (
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| err("bad coefficient"))?,
                m.trim().to_string(),
            ),
            None => match piece.parse::<i64>() {
                Ok(c) => (c, "1".to_string()),
                Err(_) => (1, piece.clone()),
            },
        };
        let mut g = group.identity();
        for factor in mono.split_whitespace() {
            if factor == "1" {
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (factor, 1),
            };
            let h = match base {
                "t" => group.tau_pow(exp),
                "s" => group.sigma_pow(exp),
                _ => return Err(err("unknown generator")),
            };
            g = group.mul(g, h);
        }
        let k = group.index(g);
        out.coeffs[k] = add_mod(out.coeffs[k], reduce(sign * coeff, modulus), modulus);
    }
    Ok(out)
}

/// Distinguished group-ring elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    TTau,
    TSigma,
    /// C_i = τ^i T_σ (1 − τ).
    C(i64),
    /// The semidirect element B.
    B,
    /// The dihedral element 1 − στ.
    BDihedral,
}

fn require_even_s_odd_d(g: &MetacyclicGroup, what: &str) -> Result<(), RingError> {
    if !g.s().is_multiple_of(2) || g.d().is_multiple_of(2) {
        return Err(RingError::FamilyMismatch(format!(
            "{what} requires even s and odd d"
        )));
    }
    Ok(())
}

pub fn special_element(
    g: MetacyclicGroup,
    kind: SpecialKind,
    modulus: u64,
) -> Result<RingElement, RingError> {
    let d = g.d() as i64;
    let s = g.s() as i64;
    match kind {
        SpecialKind::TTau => Ok(RingElement::from_terms(
            g,
            modulus,
            &(0..d).map(|i| (1, g.tau_pow(i))).collect::<Vec<_>>(),
        )),
        SpecialKind::TSigma => Ok(RingElement::from_terms(
            g,
            modulus,
            &(0..s).map(|j| (1, g.sigma_pow(j))).collect::<Vec<_>>(),
        )),
        SpecialKind::C(i) => {
            require_even_s_odd_d(&g, "C_i")?;
            let tsig = special_element(g, SpecialKind::TSigma, modulus)?;
            let one_minus_tau =
                &RingElement::one(g, modulus) - &RingElement::tau_pow(g, modulus, 1);
            Ok(&(&RingElement::tau_pow(g, modulus, i) * &tsig) * &one_minus_tau)
        }
        SpecialKind::B => {
            require_even_s_odd_d(&g, "B")?;
            if g.theta(s / 2) != g.d() - 1 {
                return Err(RingError::FamilyMismatch(
                    "B requires t^(s/2) = -1 mod d".into(),
                ));
            }
            let half = s / 2;
            let mut inner = RingElement::zero(g, modulus);
            for j in 0..half {
                let theta_j = g.theta(j) as i64;
                let partial = RingElement::from_terms(
                    g,
                    modulus,
                    &(0..theta_j).map(|i| (1, g.tau_pow(i))).collect::<Vec<_>>(),
                );
                inner = &inner + &(&partial * &RingElement::sigma_pow(g, modulus, j));
            }
            let front = &RingElement::one(g, modulus) - &RingElement::sigma_pow(g, modulus, half);
            let mid = RingElement::tau_pow(g, modulus, (d + 1) / 2);
            Ok(&(&front * &mid) * &inner)
        }
        SpecialKind::BDihedral => {
            if g.s() != 2 || g.t() != g.d() - 1 || g.d().is_multiple_of(2) {
                return Err(RingError::FamilyMismatch(
                    "1 - στ element requires the dihedral group of odd degree".into(),
                ));
            }
            let st = g.mul(g.sigma(), g.tau());
            Ok(RingElement::from_terms(
                g,
                modulus,
                &[(1, g.identity()), (-1, st)],
            ))
        }
    }
}

/// Names of the submodules of Z[G] handled with explicit bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleName {
    M1,
    M2,
    M3,
    M3Prime,
    MB,
    M4,
    K,
    KPrime,
    IndJ,
    IndJPrime,
    IndHPrime,
    FullRing,
}

impl fmt::Display for ModuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModuleName::M1 => "M1",
            ModuleName::M2 => "M2",
            ModuleName::M3 => "M3",
            ModuleName::M3Prime => "M3prime",
            ModuleName::MB => "MB",
            ModuleName::M4 => "M4",
            ModuleName::K => "K",
            ModuleName::KPrime => "Kprime",
            ModuleName::IndJ => "IndJ",
            ModuleName::IndJPrime => "IndJprime",
            ModuleName::IndHPrime => "IndHprime",
            ModuleName::FullRing => "fullring",
        };
        f.write_str(s)
    }
}

/// Vectors of ring elements as rows of a matrix in Z/m[G] coordinates.
pub fn elements_matrix(group: MetacyclicGroup, modulus: u64, elements: &[RingElement]) -> MatrixZn {
    let rows: Vec<Vec<u64>> = elements.iter().map(|e| e.coeffs.clone()).collect();
    MatrixZn::from_rows(modulus, group.order(), &rows)
}

/// Matrix of x ↦ x·r on Z/m[G] in the group-element basis.
pub fn right_mul_matrix(r: &RingElement) -> MatrixZn {
    let g = r.group;
    let rows: Vec<RingElement> = (0..g.order())
        .map(|k| &RingElement::from_element(g, r.modulus, g.element(k)) * r)
        .collect();
    elements_matrix(g, r.modulus, &rows)
}

/// A Z/m-basis of a left submodule of Z/m[G].
#[derive(Clone, Debug)]
pub struct FreeModuleBasis {
    name: ModuleName,
    group: MetacyclicGroup,
    modulus: u64,
    elements: Vec<RingElement>,
    /// Optional presentation b_k = x_k · generator, used for generator maps.
    generated: Option<(RingElement, Vec<RingElement>)>,
    howell: HowellForm,
}

impl FreeModuleBasis {
    /// Builds a basis, verifying Z/m-linear independence (the span is free of full rank).
    pub fn new(
        name: ModuleName,
        group: MetacyclicGroup,
        modulus: u64,
        elements: Vec<RingElement>,
    ) -> Result<Self, RingError> {
        for e in &elements {
            if e.group != group || e.modulus != modulus {
                return Err(RingError::ModulusMismatch);
            }
        }
        let m = elements_matrix(group, modulus, &elements);
        if free_rank(&m) != Some(elements.len()) {
            return Err(RingError::NotIndependent(name.to_string()));
        }
        let howell = HowellForm::with_transform(&m);
        Ok(FreeModuleBasis {
            name,
            group,
            modulus,
            elements,
            generated: None,
            howell,
        })
    }

    /// Builds a basis b_k = x_k · generator from the multipliers x_k.
    pub fn generated_by(
        name: ModuleName,
        group: MetacyclicGroup,
        generator: RingElement,
        multipliers: Vec<RingElement>,
    ) -> Result<Self, RingError> {
        let modulus = generator.modulus;
        let elements: Vec<RingElement> = multipliers
            .iter()
            .map(|x| x.try_mul(&generator))
            .collect::<Result<_, _>>()?;
        let mut basis = Self::new(name, group, modulus, elements)?;
        basis.generated = Some((generator, multipliers));
        Ok(basis)
    }

    pub fn name(&self) -> ModuleName {
        self.name
    }

    pub fn group(&self) -> MetacyclicGroup {
        self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn generator(&self) -> Option<&RingElement> {
        self.generated.as_ref().map(|(g, _)| g)
    }

    pub fn multipliers(&self) -> Option<&[RingElement]> {
        self.generated.as_ref().map(|(_, x)| x.as_slice())
    }

    /// Basis elements as rows in Z/m[G] coordinates.
    pub fn matrix(&self) -> MatrixZn {
        elements_matrix(self.group, self.modulus, &self.elements)
    }

    /// Coordinates of `x` in this basis.
    pub fn coords(&self, x: &RingElement) -> Result<Vec<u64>, RingError> {
        self.howell
            .solve(&x.coeffs)
            .map_err(|_| RingError::NotInSpan(self.name.to_string()))
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        self.howell.contains(&x.coeffs)
    }

    /// Σ c_k b_k.
    pub fn element_of(&self, coords: &[u64]) -> RingElement {
        assert_eq!(coords.len(), self.rank(), "dimension mismatch");
        let data = self.matrix().apply(coords);
        RingElement::from_coeffs(self.group, self.modulus, data)
    }

    /// Matrix A(g) with g·b_k = Σ_l A[k][l] b_l.
    pub fn action_matrix(&self, g: GroupElement) -> Result<MatrixZn, RingError> {
        let rows = self
            .elements
            .iter()
            .map(|b| {
                self.coords(&b.left_translate(g))
                    .map_err(|_| RingError::NotStable(self.name.to_string(), g))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixZn::from_rows(self.modulus, self.rank(), &rows))
    }

    /// Action matrices for every group element in canonical order.
    pub fn all_action_matrices(&self) -> Result<Vec<MatrixZn>, RingError> {
        self.group
            .elements()
            .into_iter()
            .map(|g| self.action_matrix(g))
            .collect()
    }

    /// Matrix of a map given by its values on basis elements, expressed in `target`.
    pub fn map_matrix<F>(&self, target: &FreeModuleBasis, mut f: F) -> Result<MatrixZn, RingError>
    where
        F: FnMut(usize, &RingElement) -> RingElement,
    {
        let rows = self
            .elements
            .iter()
            .enumerate()
            .map(|(k, b)| target.coords(&f(k, b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixZn::from_rows(self.modulus, target.rank(), &rows))
    }

    /// Matrix of x ↦ x·r from this module to `target`.
    pub fn right_mul_to(
        &self,
        target: &FreeModuleBasis,
        r: &RingElement,
    ) -> Result<MatrixZn, RingError> {
        self.map_matrix(target, |_, b| b * r)
    }

    /// Matrix of the G-map determined by generator ↦ image, i.e. x_k·gen ↦ x_k·image.
    pub fn generator_map_to(
        &self,
        target: &FreeModuleBasis,
        image: &RingElement,
    ) -> Result<MatrixZn, RingError> {
        let (_, mult) = self.generated.as_ref().ok_or_else(|| {
            RingError::FamilyMismatch(format!("basis {} has no generator presentation", self.name))
        })?;
        let mult = mult.clone();
        self.map_matrix(target, |k, _| &mult[k] * image)
    }
}
