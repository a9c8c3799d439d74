//! Construction and verification of M₁ → M₂ → M₃ → M₄ with homotopies.

use crate::group_ring::{special_element, FreeModuleBasis, ModuleName, RingElement, SpecialKind};
use crate::groups::MetacyclicGroup;
use crate::report::{InstanceDescriptor, VerificationReport};
use crate::znz::{free_rank, kernel, same_span, HowellForm, MatrixZn};

use super::{SequenceError, SequenceFamily};

/// The four modules over Z/d², maps d₁..d₃, homotopies h₁..h₃, and a
/// set-theoretic section ℓ of d̄₃ over Z/d.
#[derive(Clone, Debug)]
pub struct FourTermSequence {
    pub family: SequenceFamily,
    pub group: MetacyclicGroup,
    pub modulus: u64,
    /// M₁..M₄.
    pub modules: [FreeModuleBasis; 4],
    /// d₁: M₁→M₂, d₂: M₂→M₃, d₃: M₃→M₄ as row-vector matrices.
    pub d: [MatrixZn; 3],
    /// h₁: M₂→M₁, h₂: M₃→M₂, h₃: M₄→M₃.
    pub h: [MatrixZn; 3],
    /// ℓ: M̄₄ → M̄₃ over Z/d with ℓ·d̄₃ = id.
    pub lifting: MatrixZn,
    /// The element generating M₃ (B or its family variant).
    pub b: RingElement,
    /// M₄ is modeled as Z/d²[G]·b4·T_τ with d₃(b) = b4·T_τ; b4 = b except for
    /// the semidirect family, where b4 = 1 − σ^(s/2).
    pub b4: RingElement,
    /// Action matrices over Z/d² for every group element, per module.
    pub actions: [Vec<MatrixZn>; 4],
    /// Sign applied to d₁⁻¹h₂δℓ to obtain η.
    pub eta_sign: i64,
    /// Number of basis vectors of M₃ spanning Δ = ker d₃ (the first ones).
    pub delta_rank: usize,
}

impl FourTermSequence {
    pub fn d(&self) -> u64 {
        self.group.d()
    }

    pub fn ranks(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.modules[k].rank())
    }

    /// Number of σ-translates of B in the bases of M₃ and M₄.
    pub fn half(&self) -> usize {
        match self.family {
            SequenceFamily::Cyclic => 1,
            _ => (self.group.s() / 2) as usize,
        }
    }

    pub fn descriptor(&self) -> InstanceDescriptor {
        InstanceDescriptor::new(&self.group, self.family.to_string())
    }
}

fn trace_sigma(g: MetacyclicGroup, m: u64) -> RingElement {
    special_element(g, SpecialKind::TSigma, m).expect("T_sigma is always defined")
}

fn trace_tau(g: MetacyclicGroup, m: u64) -> RingElement {
    special_element(g, SpecialKind::TTau, m).expect("T_tau is always defined")
}

/// Builds the sequence for `family` on `g`.
pub fn build_sequence(
    g: MetacyclicGroup,
    family: SequenceFamily,
) -> Result<FourTermSequence, SequenceError> {
    family.check_group(&g)?;
    let d = g.d() as i64;
    let m = g.d() * g.d();
    let one = RingElement::one(g, m);
    let tau = |k: i64| RingElement::tau_pow(g, m, k);
    let sigma = |k: i64| RingElement::sigma_pow(g, m, k);
    let t_sigma = trace_sigma(g, m);
    let t_tau = trace_tau(g, m);
    let one_minus_tau = &one - &tau(1);

    let (b, half, shift) = match family {
        SequenceFamily::Cyclic => (one.clone(), 1i64, 0i64),
        SequenceFamily::DihedralClassic => (special_element(g, SpecialKind::BDihedral, m)?, 1, 0),
        SequenceFamily::Semidirect => (
            special_element(g, SpecialKind::B, m)?,
            (g.s() / 2) as i64,
            (d + 1) / 2,
        ),
    };

    let m1 =
        FreeModuleBasis::generated_by(ModuleName::M1, g, &t_sigma * &t_tau, vec![one.clone()])?;
    let m2 = FreeModuleBasis::generated_by(
        ModuleName::M2,
        g,
        t_sigma.clone(),
        (0..d).map(tau).collect(),
    )?;
    let mut mult3: Vec<RingElement> = (0..d - 1)
        .map(|i| &tau(i - shift) * &one_minus_tau)
        .collect();
    mult3.extend((0..half).map(sigma));
    let m3 = FreeModuleBasis::generated_by(ModuleName::M3, g, b.clone(), mult3)?;
    let b4 = match family {
        SequenceFamily::Semidirect => &one - &sigma(half),
        _ => b.clone(),
    };
    let m4 = FreeModuleBasis::generated_by(
        ModuleName::M4,
        g,
        &b4 * &t_tau,
        (0..half).map(sigma).collect(),
    )?;

    let d1 = m1.right_mul_to(&m2, &one)?;
    let d2 = m2.right_mul_to(&m3, &one_minus_tau)?;
    let d3 = m3.generator_map_to(&m4, &(&b4 * &t_tau))?;
    let h1 = m2.right_mul_to(&m1, &t_tau)?;
    let h2_image = match family {
        SequenceFamily::Cyclic => RingElement::from_terms(
            g,
            m,
            &(0..d).map(|i| (-i, g.tau_pow(i))).collect::<Vec<_>>(),
        ),
        SequenceFamily::DihedralClassic | SequenceFamily::Semidirect => {
            let off = if family == SequenceFamily::Semidirect {
                (d + 1) / 2
            } else {
                0
            };
            let sum = RingElement::from_terms(
                g,
                m,
                &(0..d)
                    .map(|i| ((d - 1) / 2 - i, g.tau_pow(i + off)))
                    .collect::<Vec<_>>(),
            );
            &sum * &t_sigma
        }
    };
    let h2 = m3.generator_map_to(&m2, &h2_image)?;
    let h3 = m4.generator_map_to(&m3, &(&b * &t_tau))?;

    let delta_rank = (d - 1) as usize;
    let dm = g.d();
    let mut lifting = MatrixZn::zeros(half as usize, m3.rank(), dm);
    for j in 0..half as usize {
        lifting.set(j, delta_rank + j, 1);
    }

    let actions = [
        m1.all_action_matrices()?,
        m2.all_action_matrices()?,
        m3.all_action_matrices()?,
        m4.all_action_matrices()?,
    ];

    Ok(FourTermSequence {
        family,
        group: g,
        modulus: m,
        modules: [m1, m2, m3, m4],
        d: [d1, d2, d3],
        h: [h1, h2, h3],
        lifting,
        b,
        b4,
        actions,
        eta_sign: -1,
        delta_rank,
    })
}

/// Exactness of X --a--> Y --b--> Z at Y (either map may be absent, meaning 0).
/// Returns (ok, detail).
pub fn exactness_check(
    incoming: Option<&MatrixZn>,
    outgoing: Option<&MatrixZn>,
    dim: usize,
    modulus: u64,
) -> (bool, String) {
    let inc = incoming
        .cloned()
        .unwrap_or_else(|| MatrixZn::zeros(0, dim, modulus));
    let composite_zero = match (incoming, outgoing) {
        (Some(a), Some(b)) => a.mul(b).is_zero(),
        _ => true,
    };
    let ker = match outgoing {
        Some(b) => kernel(b),
        None => MatrixZn::identity(dim, modulus),
    };
    let contained = HowellForm::new(&inc).contains_span(&ker);
    let ok = composite_zero && contained;
    let detail = if ok {
        "image equals kernel".to_string()
    } else if !composite_zero {
        "composite is nonzero".to_string()
    } else {
        "kernel is larger than image".to_string()
    };
    (ok, detail)
}

fn equivariant(src: &[MatrixZn], tgt: &[MatrixZn], map: &MatrixZn, gens: &[usize]) -> bool {
    gens.iter().all(|&k| src[k].mul(map) == map.mul(&tgt[k]))
}

/// Verifies exactness, prism identities, equivariance, ranks and spans.
pub fn verify_four_term(seq: &FourTermSequence) -> VerificationReport {
    let mut rep = VerificationReport::new(seq.descriptor());
    let g = seq.group;
    let m = seq.modulus;
    let dm = g.d();
    let ranks = seq.ranks();
    let names = ["M1", "M2", "M3", "M4"];
    let [d1, d2, d3] = &seq.d;
    let [h1, h2, h3] = &seq.h;

    let junctions: [(Option<&MatrixZn>, Option<&MatrixZn>); 4] = [
        (None, Some(d1)),
        (Some(d1), Some(d2)),
        (Some(d2), Some(d3)),
        (Some(d3), None),
    ];
    for (k, (inc, out)) in junctions.iter().enumerate() {
        let (ok, detail) = exactness_check(*inc, *out, ranks[k], m);
        rep.check(format!("exact.{}", names[k]), ok, detail);
        let inc_d = inc.map(|x| x.reduce_mod(dm));
        let out_d = out.map(|x| x.reduce_mod(dm));
        let (ok, detail) = exactness_check(inc_d.as_ref(), out_d.as_ref(), ranks[k], dm);
        rep.check(format!("exact_mod_d.{}", names[k]), ok, detail);
    }

    let scalar = |k: usize| MatrixZn::scalar(ranks[k], dm, m);
    let prisms = [
        d1.mul(h1),
        h1.mul(d1).add(&d2.mul(h2)),
        h2.mul(d2).add(&d3.mul(h3)),
        h3.mul(d3),
    ];
    for (k, p) in prisms.iter().enumerate() {
        let ok = *p == scalar(k);
        rep.check(
            format!("prism.{}", names[k]),
            ok,
            if ok {
                format!("d h + h d = {dm} on {}", names[k])
            } else {
                "prism identity fails".into()
            },
        );
    }

    let gens: Vec<usize> = g.generators().into_iter().map(|x| g.index(x)).collect();
    let maps: [(&str, &MatrixZn, usize, usize); 6] = [
        ("d1", d1, 0, 1),
        ("d2", d2, 1, 2),
        ("d3", d3, 2, 3),
        ("h1", h1, 1, 0),
        ("h2", h2, 2, 1),
        ("h3", h3, 3, 2),
    ];
    for (name, map, s, t) in maps {
        let ok = equivariant(&seq.actions[s], &seq.actions[t], map, &gens);
        rep.check(
            format!("equivariant.{name}"),
            ok,
            if ok {
                "commutes with generators"
            } else {
                "not equivariant"
            },
        );
    }

    let d = g.d() as usize;
    let half = seq.half();
    let expected = [1, d, d - 1 + half, half];
    for k in 0..4 {
        let free = free_rank(&seq.modules[k].matrix());
        let ok = ranks[k] == expected[k] && free == Some(ranks[k]);
        rep.check(
            format!("rank.{}", names[k]),
            ok,
            format!("rank {} (expected {})", ranks[k], expected[k]),
        );
        rep.ranks.insert(names[k].to_string(), ranks[k]);
    }

    for k in 0..4 {
        let (ok, detail) = check_relations(&seq.actions[k], g, m);
        rep.check(format!("action.{}", names[k]), ok, detail);
    }

    let t_sigma = trace_sigma(g, m);
    let one_minus_tau = &RingElement::one(g, m) - &RingElement::tau_pow(g, m, 1);
    let spans: [Vec<RingElement>; 4] = [
        vec![seq.modules[0].elements()[0].clone()],
        vec![t_sigma.clone()],
        vec![&t_sigma * &one_minus_tau, seq.b.clone()],
        vec![&seq.b4 * &trace_tau(g, m)],
    ];
    for k in 0..4 {
        let ok = same_span(&seq.modules[k].matrix(), &left_module_span(g, m, &spans[k]));
        rep.check(
            format!("span.{}", names[k]),
            ok,
            if ok {
                "basis spans the generated submodule"
            } else {
                "span mismatch"
            },
        );
    }

    let m3 = &seq.modules[2];
    let delta_rows: Vec<usize> = (0..seq.delta_rank).collect();
    let b_rows: Vec<usize> = (seq.delta_rank..m3.rank()).collect();
    let basis = m3.matrix();
    let prime = basis.select_rows(&delta_rows);
    let mb = basis.select_rows(&b_rows);
    let ok_prime = same_span(
        &prime,
        &left_module_span(g, m, &[&t_sigma * &one_minus_tau]),
    );
    let independent = free_rank(&prime.vstack(&mb)) == Some(m3.rank());
    rep.check(
        "decomposition.M3",
        ok_prime && independent,
        format!(
            "M3' rank {} ({}), M_B rank {}, sum {}",
            prime.rows(),
            if ok_prime {
                "G-stable span"
            } else {
                "span mismatch"
            },
            mb.rows(),
            if independent { "direct" } else { "not direct" }
        ),
    );

    let lift_ok = seq.lifting.mul(&d3.reduce_mod(dm)) == MatrixZn::identity(half, dm);
    rep.check(
        "lifting.section",
        lift_ok,
        if lift_ok {
            "l then d3 is the identity mod d"
        } else {
            "not a section"
        },
    );
    rep.sort();
    rep
}

/// Z/m-span of all left translates of the given elements.
pub(crate) fn left_module_span(g: MetacyclicGroup, m: u64, gens: &[RingElement]) -> MatrixZn {
    let mut rows = Vec::new();
    for x in gens {
        for h in g.elements() {
            rows.push(x.left_translate(h).coeffs().to_vec());
        }
    }
    MatrixZn::from_rows(m, g.order(), &rows)
}

/// Checks τ^d = σ^s = 1, A(gh) = A(h)A(g) on generators, and στσ⁻¹ = τ^t.
fn check_relations(actions: &[MatrixZn], g: MetacyclicGroup, m: u64) -> (bool, String) {
    let n = actions[0].rows();
    let id = MatrixZn::identity(n, m);
    if actions[0] != id {
        return (false, "identity does not act trivially".into());
    }
    let a = |x| &actions[g.index(x)];
    let pow = |mat: &MatrixZn, k: u64| {
        let mut r = id.clone();
        for _ in 0..k {
            r = r.mul(mat);
        }
        r
    };
    let at = a(g.tau());
    let asg = a(g.sigma());
    if pow(at, g.d()) != id || pow(asg, g.s()) != id {
        return (false, "generator orders violated".into());
    }
    for x in g.elements() {
        for y in [g.tau(), g.sigma()] {
            if *a(g.mul(x, y)) != a(y).mul(a(x)) {
                return (false, format!("A(gh) != A(h)A(g) for g = {x}, h = {y}"));
            }
        }
    }
    let conj = a(g.inv(g.sigma())).mul(at).mul(asg);
    if conj != pow(at, g.t()) {
        return (false, "conjugation relation violated".into());
    }
    (true, "relations hold".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, Family};

    fn seq(d: u64, s: u64, t: u64, f: Family, sf: SequenceFamily) -> FourTermSequence {
        build_sequence(make_group(d, s, t, f).unwrap(), sf).unwrap()
    }

    #[test]
    fn small_grid_passes() {
        for (d, s, t, f, sf) in [
            (2, 1, 1, Family::Cyclic, SequenceFamily::Cyclic),
            (5, 1, 1, Family::Cyclic, SequenceFamily::Cyclic),
            (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
            (3, 2, 2, Family::Semidirect, SequenceFamily::Semidirect),
            (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
        ] {
            let rep = verify_four_term(&seq(d, s, t, f, sf));
            assert!(rep.all_pass(), "{d},{s},{t}: {:?}", rep.failures());
        }
    }

    #[test]
    fn rank_table_5_4_2() {
        let s = seq(5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect);
        assert_eq!(s.ranks(), [1, 5, 6, 2]);
    }

    #[test]
    fn cyclic_prism_at_m2() {
        let s = seq(5, 1, 1, Family::Cyclic, SequenceFamily::Cyclic);
        let lhs = s.h[0].mul(&s.d[0]).add(&s.d[1].mul(&s.h[1]));
        assert_eq!(lhs, MatrixZn::scalar(5, 5, 25));
    }

    #[test]
    fn semidirect_h2d2_on_t_sigma() {
        let s = seq(5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect);
        let g = s.group;
        let m = s.modulus;
        let t_sigma = trace_sigma(g, m);
        let coords = s.modules[1].coords(&t_sigma).unwrap();
        let image = s.d[1].mul(&s.h[1]).apply(&coords);
        let got = s.modules[1].element_of(&image);
        let expected = &(&trace_tau(g, m) * &t_sigma).neg() + &t_sigma.scale(5);
        assert_eq!(got, expected);
    }

    #[test]
    fn dihedral_d2h2_on_b() {
        let s = seq(3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic);
        let g = s.group;
        let m = s.modulus;
        let coords = s.modules[2].coords(&s.b).unwrap();
        let image = s.h[1].mul(&s.d[1]).apply(&coords);
        let got = s.modules[2].element_of(&image);
        let d_minus_t = &RingElement::one(g, m).scale(3) - &trace_tau(g, m);
        assert_eq!(got, &d_minus_t * &s.b);
    }

    #[test]
    fn family_mismatch() {
        let g = make_group(5, 4, 2, Family::Semidirect).unwrap();
        assert!(matches!(
            build_sequence(g, SequenceFamily::Cyclic),
            Err(SequenceError::FamilyMismatch(_))
        ));
    }
}
