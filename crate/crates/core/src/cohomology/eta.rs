//! The connecting map η: Hⁿ(M̄₄) → Hⁿ⁺¹(M̄₁) of a four-term sequence, its
//! closed forms, the equivalent descriptions through the split short
//! sequences, and the prism identity for Bockstein maps.

use rand::Rng;

use crate::groups::{GroupTable, MetacyclicGroup};
use crate::report::{Claim, VerificationReport};
use crate::sequences::{FourTermSequence, SequenceFamily};
use crate::znz::arith::{mul_mod, reduce};
use crate::znz::{HowellForm, MatrixZn};

use super::cochain::{coboundary, cup1, Cochain};
use super::connecting::{bockstein, ShortExact};
use super::group::{cohomology_group, is_coboundary, CohomologyGroup};
use super::module::ZnModule;
use super::{CohomologyError, DegreePolicy};

/// Mod-d and mod-d² modules of a four-term sequence together with the maps
/// needed by η and the six-term sequence.
#[derive(Clone, Debug)]
pub struct SequenceCohomology {
    pub seq: FourTermSequence,
    pub table: GroupTable,
    pub policy: DegreePolicy,
    /// M̄₁..M̄₄ over Z/d.
    pub bar: [ZnModule; 4],
    /// M₁..M₄ over Z/d².
    pub big: [ZnModule; 4],
    pub delta: ZnModule,
    pub delta_big: ZnModule,
    /// d̄₁, d̄₂, d̄₃ and h̄₁, h̄₂, h̄₃ over Z/d.
    pub d_bar: [MatrixZn; 3],
    pub h_bar: [MatrixZn; 3],
    d1_form: HowellForm,
}

impl SequenceCohomology {
    pub fn new(seq: &FourTermSequence, policy: &DegreePolicy) -> Self {
        let d = seq.d();
        let table = GroupTable::of_group(&seq.group);
        let bar = std::array::from_fn(|k| ZnModule::from_sequence_mod_d(seq, k));
        let big = std::array::from_fn(|k| ZnModule::from_sequence(seq, k));
        let d_bar = std::array::from_fn(|k| seq.d[k].reduce_mod(d));
        let h_bar = std::array::from_fn(|k| seq.h[k].reduce_mod(d));
        let d1_form = HowellForm::with_transform(&seq.d[0].reduce_mod(d));
        SequenceCohomology {
            seq: seq.clone(),
            table,
            policy: policy.clone(),
            bar,
            big,
            delta: ZnModule::delta(seq, d),
            delta_big: ZnModule::delta(seq, seq.modulus),
            d_bar,
            h_bar,
            d1_form,
        }
    }

    pub fn d(&self) -> u64 {
        self.seq.d()
    }

    pub fn group(&self) -> &MetacyclicGroup {
        &self.seq.group
    }

    /// Hⁿ(M̄ₖ) for k = 1..4.
    pub fn h(&self, k: usize, n: usize) -> Result<CohomologyGroup, CohomologyError> {
        cohomology_group(&self.table, &self.bar[k - 1], n, &self.policy)
    }

    pub fn h_delta(&self, n: usize) -> Result<CohomologyGroup, CohomologyError> {
        cohomology_group(&self.table, &self.delta, n, &self.policy)
    }

    pub fn is_coboundary(&self, module: &ZnModule, c: &Cochain) -> Result<bool, CohomologyError> {
        is_coboundary(&self.table, module, c, &self.policy)
    }

    fn delta_inclusion(&self) -> MatrixZn {
        let r3 = self.bar[2].rank;
        MatrixZn::identity(r3, self.d()).select_rows(&(0..self.seq.delta_rank).collect::<Vec<_>>())
    }

    /// 0 → Δ̄ → M̄₃ → M̄₄ → 0 with the lifting ℓ as section.
    pub fn short_delta_m4(&self) -> ShortExact {
        ShortExact {
            sub: self.delta.clone(),
            mid: self.bar[2].clone(),
            quot: self.bar[3].clone(),
            inclusion: self.delta_inclusion(),
            projection: self.d_bar[2].clone(),
            section: self.seq.lifting.clone(),
        }
    }

    /// 0 → M̄₁ → M̄₂ → Δ̄ → 0 with the section eₖ ↦ eₖ.
    pub fn short_m1_delta(&self) -> ShortExact {
        let d = self.d();
        let k = self.seq.delta_rank;
        let idx: Vec<usize> = (0..k).collect();
        ShortExact {
            sub: self.bar[0].clone(),
            mid: self.bar[1].clone(),
            quot: self.delta.clone(),
            inclusion: self.d_bar[0].clone(),
            projection: self.d_bar[1].select_cols(&idx),
            section: MatrixZn::identity(self.bar[1].rank, d).select_rows(&idx),
        }
    }

    /// h̃₂ = d̄₁⁻¹h̄₂ restricted to Δ̄, as a matrix Δ̄ → M̄₁.
    pub fn h2_tilde(&self) -> Result<MatrixZn, CohomologyError> {
        let rows = self
            .delta_inclusion()
            .mul(&self.h_bar[1])
            .row_vecs()
            .iter()
            .map(|v| self.d1_inverse(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixZn::from_rows(self.d(), self.bar[0].rank, &rows))
    }

    /// ĥ₃ = h̄₃ as a map M̄₄ → Δ̄.
    pub fn h3_hat(&self) -> Result<MatrixZn, CohomologyError> {
        let k = self.seq.delta_rank;
        let h3 = &self.h_bar[2];
        if (0..h3.rows()).any(|r| h3.row(r)[k..].iter().any(|&x| x != 0)) {
            return Err(CohomologyError::OutsideImage(
                "h3 mod d does not land in Delta".into(),
            ));
        }
        Ok(h3.select_cols(&(0..k).collect::<Vec<_>>()))
    }

    fn d1_inverse(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.d1_form.solve(v).map_err(|_| {
            CohomologyError::OutsideImage("value is not in the image of d1 mod d".into())
        })
    }

    /// d̄₁⁻¹h̄₂δℓ(c) for a cocycle c in M̄₄.
    pub fn eta_raw(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        let lifted = c.map_values(&self.seq.lifting);
        let dl = coboundary(&self.table, &self.bar[2], &lifted);
        let in_m2 = dl.map_values(&self.h_bar[1]);
        let mut out = Cochain::zero(dl.degree, dl.order, self.bar[0].rank, self.d());
        for idx in 0..in_m2.num_tuples() {
            let v = in_m2.value(idx);
            if v.iter().any(|&x| x != 0) {
                let x = self.d1_inverse(v)?;
                out.set_value(idx, &x);
            }
        }
        Ok(out)
    }

    /// η(c) = sign · d̄₁⁻¹h̄₂δℓ(c) with the sign stored on the sequence.
    pub fn eta(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        Ok(self.eta_raw(c)?.scale(self.seq.eta_sign))
    }

    /// −ĥ₂∂_{ΔM₄}(c).
    pub fn eta_via_h2(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        let dc = self.short_delta_m4().connecting(&self.table, c)?;
        Ok(dc.map_values(&self.h2_tilde()?).neg())
    }

    /// ∂_{M₁Δ}ĥ₃(c).
    pub fn eta_via_h3(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        let h = c.map_values(&self.h3_hat()?);
        self.short_m1_delta().connecting(&self.table, &h)
    }

    /// τ-exponent i of g₁ in the family's coset decomposition
    /// (τⁱ, (στ)ʲτⁱ, or σʲτⁱ).
    pub fn coset_exponent(&self, g: usize) -> u64 {
        let grp = self.group();
        let d = grp.d();
        let e = self.table.label(g);
        match self.seq.family {
            SequenceFamily::Cyclic => e.i % d,
            SequenceFamily::DihedralClassic => {
                if e.j == 0 {
                    e.i % d
                } else {
                    reduce(-(e.i as i64) - 1, d)
                }
            }
            SequenceFamily::Semidirect => mul_mod(grp.theta(-(e.j as i64)), e.i, d),
        }
    }

    /// The family's closed form for η; `literal` selects the weight
    /// θ_{s−m} − 1 instead of θ_{−m} for the semidirect family.
    pub fn eta_closed_with(&self, c: &Cochain, literal: bool) -> Cochain {
        let d = self.d();
        let grp = *self.group();
        let s = grp.s() as i64;
        let weights: Vec<u64> = (0..self.bar[3].rank as i64)
            .map(|m| match self.seq.family {
                SequenceFamily::Semidirect if literal => (grp.theta(s - m) + d - 1) % d,
                SequenceFamily::Semidirect => grp.theta(-m) % d,
                _ => 1,
            })
            .collect();
        let order = self.table.order();
        let tail = c.num_tuples();
        let mut out = Cochain::zero(c.degree + 1, order, 1, d);
        for g in 0..order {
            let i = self.coset_exponent(g);
            if i == 0 {
                continue;
            }
            for t in 0..tail {
                let v = c.value(t);
                let sum = v
                    .iter()
                    .zip(&weights)
                    .fold(0, |acc, (&x, &w)| (acc + mul_mod(x, w, d)) % d);
                out.set_value(g * tail + t, &[mul_mod(d - i, sum, d)]);
            }
        }
        out
    }

    pub fn eta_closed(&self, c: &Cochain) -> Cochain {
        self.eta_closed_with(c, false)
    }

    /// The degree-1 cochain χ(τ^kσ^ℓ) = Σ_m (k·t·θ₁^(−m) + Σ_{β<ℓ} s_{m−β}) σ^m·e₀
    /// on M̄₄ for the semidirect family, with s_{m+s/2} = −s_m.
    pub fn parametrized_cocycle(&self, t: u64, svals: &[u64]) -> Result<Cochain, CohomologyError> {
        if self.seq.family != SequenceFamily::Semidirect {
            return Err(CohomologyError::Input(
                "the parametrization applies to the semidirect family".into(),
            ));
        }
        let d = self.d();
        let grp = *self.group();
        let half = self.bar[3].rank as i64;
        if svals.len() != half as usize {
            return Err(CohomologyError::Input(format!(
                "expected {half} values s_m"
            )));
        }
        let s_at = |m: i64| {
            let q = m.div_euclid(half);
            let v = svals[m.rem_euclid(half) as usize] % d;
            if q % 2 == 0 {
                v
            } else {
                (d - v) % d
            }
        };
        Ok(Cochain::from_fn(
            1,
            self.table.order(),
            half as usize,
            d,
            |tuple| {
                let e = self.table.label(tuple[0]);
                (0..half)
                    .map(|m| {
                        let mut c = mul_mod(mul_mod(e.i, t, d), grp.theta(-m), d);
                        for beta in 0..e.j as i64 {
                            c = (c + s_at(m - beta)) % d;
                        }
                        c
                    })
                    .collect()
            },
        ))
    }

    /// χ with χ(τ^k) = k on a cyclic group.
    pub fn cyclic_character(&self) -> Cochain {
        let d = self.d();
        Cochain::from_fn(1, self.table.order(), 1, d, |t| {
            vec![self.table.label(t[0]).i % d]
        })
    }

    /// −χ ⌣ c for the cyclic family.
    pub fn eta_cup(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        if self.seq.family != SequenceFamily::Cyclic {
            return Err(CohomologyError::Input(
                "the cup-product form applies to the cyclic family".into(),
            ));
        }
        Ok(cup1(&self.table, &self.cyclic_character(), c)?.neg())
    }

    /// Cocycle representatives to test in degree n: class generators plus
    /// `samples` random cocycles (or every cocycle when there are at most `samples`).
    pub fn test_cocycles<R: Rng>(
        &self,
        h: &CohomologyGroup,
        samples: usize,
        rng: &mut R,
    ) -> Vec<Cochain> {
        let mut out: Vec<Cochain> = h.generators().to_vec();
        match h.all_cocycles(samples as u128) {
            Some(all) => out.extend(all),
            None => out.extend((0..samples).map(|_| h.random_cocycle(rng))),
        }
        out
    }

    /// Whether two cochains in `module` are cohomologous.
    pub fn cohomologous(
        &self,
        module: &ZnModule,
        a: &Cochain,
        b: &Cochain,
    ) -> Result<bool, CohomologyError> {
        self.is_coboundary(module, &a.sub(b))
    }
}

/// Outcome of comparing η with one of its descriptions on a list of cocycles.
fn compare_all<F>(
    sc: &SequenceCohomology,
    cocycles: &[Cochain],
    mut other: F,
) -> Result<(usize, usize), CohomologyError>
where
    F: FnMut(&Cochain) -> Result<Cochain, CohomologyError>,
{
    let mut agree = 0;
    for c in cocycles {
        if sc.cohomologous(&sc.bar[0], &sc.eta(c)?, &other(c)?)? {
            agree += 1;
        }
    }
    Ok((agree, cocycles.len()))
}

/// Checks on η in degree n: cocycle and class well-definedness, closed forms,
/// and the two descriptions through connecting maps.
pub fn verify_eta<R: Rng>(
    sc: &SequenceCohomology,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<Claim>, CohomologyError> {
    let mut claims = Vec::new();
    let h4 = sc.h(4, n)?;
    let cocycles = sc.test_cocycles(&h4, samples, rng);
    let count = cocycles.len();

    let mut cocycle_ok = true;
    for c in &cocycles {
        cocycle_ok &= coboundary(&sc.table, &sc.bar[0], &sc.eta(c)?).is_zero();
    }
    claims.push(Claim::new(
        format!("eta.cocycle.n{n}"),
        cocycle_ok,
        format!("eta(c) is a cocycle on {count} inputs"),
    ));

    let mut bd_ok = true;
    for _ in 0..samples.clamp(1, 10) {
        let x = random_cochain(n.saturating_sub(1), &sc.table, &sc.bar[3], rng);
        let y = if n == 0 {
            Cochain::zero(0, sc.table.order(), sc.bar[3].rank, sc.d())
        } else {
            coboundary(&sc.table, &sc.bar[3], &x)
        };
        bd_ok &= sc.is_coboundary(&sc.bar[0], &sc.eta(&y)?)?;
    }
    claims.push(Claim::new(
        format!("eta.coboundary.n{n}"),
        bd_ok,
        "eta maps coboundaries to coboundaries",
    ));

    let (a, t) = compare_all(sc, &cocycles, |c| Ok(sc.eta_closed(c)))?;
    claims.push(Claim::new(
        format!("eta.closed.n{n}"),
        a == t,
        format!("closed form agrees with generic eta on {a}/{t} cocycles"),
    ));

    if sc.seq.family == SequenceFamily::Cyclic {
        let (a, t) = compare_all(sc, &cocycles, |c| sc.eta_cup(c))?;
        claims.push(Claim::new(
            format!("eta.cup.n{n}"),
            a == t,
            format!("eta ~ -chi cup c on {a}/{t} cocycles"),
        ));
    }
    if sc.seq.family == SequenceFamily::Semidirect {
        let (a, t) = compare_all(sc, &cocycles, |c| Ok(sc.eta_closed_with(c, true)))?;
        claims.push(Claim::info(
            format!("eta.closed_literal.n{n}"),
            format!("weight theta_(s-m) - 1 agrees with generic eta on {a}/{t} cocycles"),
        ));
    }

    if sc.seq.family == SequenceFamily::Semidirect && n == 1 {
        let half = sc.bar[3].rank;
        let d = sc.d();
        let mut params = Vec::new();
        for _ in 0..samples.max(1) {
            let t = rng.gen_range(0..d);
            let sv: Vec<u64> = (0..half).map(|_| rng.gen_range(0..d)).collect();
            params.push(sc.parametrized_cocycle(t, &sv)?);
        }
        let all_cocycles = params
            .iter()
            .all(|c| coboundary(&sc.table, &sc.bar[3], c).is_zero());
        claims.push(Claim::new(
            "eta.parametrized.cocycle",
            all_cocycles,
            format!(
                "parametrized crossed homomorphisms are cocycles on {} samples",
                params.len()
            ),
        ));
        if all_cocycles {
            let (a, t) = compare_all(sc, &params, |c| Ok(sc.eta_closed_with(c, true)))?;
            let (b, _) = compare_all(sc, &params, |c| Ok(sc.eta_closed(c)))?;
            claims.push(Claim::info(
                "eta.parametrized.closed",
                format!("weight theta_1^(-m) - 1 agrees on {a}/{t} parametrized cocycles, weight theta_1^(-m) on {b}/{t}"),
            ));
        }
    }

    let (a, t) = compare_all(sc, &cocycles, |c| sc.eta_via_h2(c))?;
    claims.push(Claim::new(
        format!("eta.via_h2.n{n}"),
        a == t,
        format!("eta ~ -h2 o connecting(Delta, M4) on {a}/{t} cocycles"),
    ));
    let mut both = 0;
    for c in &cocycles {
        if sc.cohomologous(&sc.bar[0], &sc.eta_via_h2(c)?, &sc.eta_via_h3(c)?)? {
            both += 1;
        }
    }
    claims.push(Claim::new(
        format!("eta.via_h3.n{n}"),
        both == count,
        format!(
            "-h2 o connecting(Delta, M4) ~ connecting(M1, Delta) o h3 on {both}/{count} cocycles"
        ),
    ));
    Ok(claims)
}

/// Uniformly random cochain of the given degree.
pub fn random_cochain<R: Rng>(
    degree: usize,
    table: &GroupTable,
    module: &ZnModule,
    rng: &mut R,
) -> Cochain {
    let m = module.modulus;
    Cochain::from_fn(degree, table.order(), module.rank, m, |_| {
        (0..module.rank).map(|_| rng.gen_range(0..m)).collect()
    })
}

/// Checks the prism identity [∂̄z] = ĥ₂B_Z(z) − B_X(ĥ₂z) in Hⁿ⁺¹(X̄) for
/// both split short sequences, recording which sign holds.
pub fn verify_prism_bockstein<R: Rng>(
    sc: &SequenceCohomology,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<Claim>, CohomologyError> {
    let mut claims = Vec::new();
    // Sequence A: X = M₁, Y = M₂, Z = Δ, h̃₂ = d̄₁⁻¹h̄₂.
    let h2t = sc.h2_tilde()?;
    let hz = sc.h_delta(n)?;
    let zs = sc.test_cocycles(&hz, samples, rng);
    let short_a = sc.short_m1_delta();
    let (plus, minus) = prism_signs(
        sc,
        &zs,
        &sc.bar[0],
        |z| short_a.connecting(&sc.table, z),
        |z| {
            let bz = bockstein(&sc.table, &sc.delta_big, z)?;
            let a = bz.map_values(&h2t);
            let b = bockstein(&sc.table, &sc.big[0], &z.map_values(&h2t))?;
            Ok((a, b))
        },
    )?;
    claims.push(prism_claim("prism_bockstein.A", n, plus, minus, zs.len()));

    // Sequence B: X = Δ, Y = M₃, Z = M₄, h̃₂ = ĥ₃.
    let h3h = sc.h3_hat()?;
    let h4 = sc.h(4, n)?;
    let ws = sc.test_cocycles(&h4, samples, rng);
    let short_b = sc.short_delta_m4();
    let (plus, minus) = prism_signs(
        sc,
        &ws,
        &sc.delta,
        |z| short_b.connecting(&sc.table, z),
        |z| {
            let bz = bockstein(&sc.table, &sc.big[3], z)?;
            let a = bz.map_values(&h3h);
            let b = bockstein(&sc.table, &sc.delta_big, &z.map_values(&h3h))?;
            Ok((a, b))
        },
    )?;
    claims.push(prism_claim("prism_bockstein.B", n, plus, minus, ws.len()));
    Ok(claims)
}

fn prism_signs<F, G>(
    sc: &SequenceCohomology,
    zs: &[Cochain],
    target: &ZnModule,
    mut lhs: F,
    mut parts: G,
) -> Result<(usize, usize), CohomologyError>
where
    F: FnMut(&Cochain) -> Result<Cochain, CohomologyError>,
    G: FnMut(&Cochain) -> Result<(Cochain, Cochain), CohomologyError>,
{
    let (mut plus, mut minus) = (0, 0);
    for z in zs {
        let l = lhs(z)?;
        let (a, b) = parts(z)?;
        let r = a.sub(&b);
        if sc.is_coboundary(target, &l.sub(&r))? {
            plus += 1;
        }
        if sc.is_coboundary(target, &l.add(&r))? {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

fn prism_claim(id: &str, n: usize, plus: usize, minus: usize, total: usize) -> Claim {
    Claim::new(
        format!("{id}.n{n}"),
        plus == total,
        format!("stated sign holds on {plus}/{total} cocycles, opposite sign on {minus}/{total}"),
    )
}

/// Runs the η and prism-Bockstein checks for degrees 0..=max_n into a report.
pub fn verify_eta_report<R: Rng>(
    sc: &SequenceCohomology,
    max_n: usize,
    samples: usize,
    rng: &mut R,
) -> VerificationReport {
    let mut rep = VerificationReport::new(sc.seq.descriptor());
    for n in 0..=max_n {
        match verify_eta(sc, n, samples, rng) {
            Ok(cs) => rep.claims.extend(cs),
            Err(e) => rep.push(Claim::new(format!("eta.n{n}"), false, e.to_string())),
        }
        match verify_prism_bockstein(sc, n, samples, rng) {
            Ok(cs) => rep.claims.extend(cs),
            Err(e) => rep.push(Claim::new(
                format!("prism_bockstein.n{n}"),
                false,
                e.to_string(),
            )),
        }
    }
    rep.sort();
    rep
}
