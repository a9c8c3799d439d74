//! The B identities, the presentation of M₄ as a quotient of Ind_J, the 3×3
//! kernel diagram, and the s = 2 sequences built from (1 ± στ).

use crate::group_ring::{
    elements_matrix, right_mul_matrix, special_element, RingElement, SpecialKind,
};
use crate::groups::MetacyclicGroup;
use crate::report::{InstanceDescriptor, VerificationReport};
use crate::znz::{free_rank, kernel, same_span, HowellForm, MatrixZn};

use super::four_term::{left_module_span, FourTermSequence};
use super::{SequenceError, SequenceFamily};

fn rank_str(r: Option<usize>) -> String {
    r.map_or_else(|| "not free".to_string(), |r| r.to_string())
}

/// σ^(s/2)B = −B and (1−τ)B = C_((d+1)/2) over Z/d².
pub fn verify_b_identities(g: MetacyclicGroup) -> Result<VerificationReport, SequenceError> {
    SequenceFamily::Semidirect.check_group(&g)?;
    let m = g.d() * g.d();
    let mut rep = VerificationReport::new(InstanceDescriptor::new(&g, "semidirect"));
    let b = special_element(g, SpecialKind::B, m)?;
    let lhs = &RingElement::sigma_pow(g, m, (g.s() / 2) as i64) * &b;
    let ok = lhs == b.neg();
    rep.check(
        "blemma.i",
        ok,
        format!("sigma^(s/2) B = {lhs}; -B = {}", b.neg()),
    );
    let one_minus_tau = &RingElement::one(g, m) - &RingElement::tau_pow(g, m, 1);
    let lhs = &one_minus_tau * &b;
    let c = special_element(g, SpecialKind::C(g.d().div_ceil(2) as i64), m)?;
    rep.check("blemma.ii", lhs == c, format!("(1 - t) B = {lhs}; C = {c}"));
    rep.sort();
    Ok(rep)
}

fn require_even_s(seq: &FourTermSequence) -> Result<(), SequenceError> {
    if !seq.group.s().is_multiple_of(2) {
        return Err(SequenceError::FamilyMismatch(
            "structural diagrams require even s".into(),
        ));
    }
    Ok(())
}

/// 0 → Ind_J' → Ind_J → M₄ → 0 with σ^j T_τ ↦ σ^j B T_τ.
pub fn verify_m4_structure(seq: &FourTermSequence) -> Result<VerificationReport, SequenceError> {
    require_even_s(seq)?;
    let g = seq.group;
    let m = seq.modulus;
    let s = g.s() as i64;
    let half = s / 2;
    let mut rep = VerificationReport::new(seq.descriptor());
    let t_tau = special_element(g, SpecialKind::TTau, m)?;
    let sig = |k: i64| RingElement::sigma_pow(g, m, k);
    let ind_j: Vec<RingElement> = (0..s).map(|j| &sig(j) * &t_tau).collect();
    let t2 = &t_tau + &(&sig(half) * &t_tau);
    let ind_jp: Vec<RingElement> = (0..half).map(|j| &sig(j) * &t2).collect();
    let ind_j_m = elements_matrix(g, m, &ind_j);
    let ind_jp_m = elements_matrix(g, m, &ind_jp);
    let m4 = &seq.modules[3];

    let map = MatrixZn::from_rows(
        m,
        m4.rank(),
        &ind_j
            .iter()
            .map(|x| m4.coords(&(x * &seq.b4)))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let surj = same_span(&map, &MatrixZn::identity(m4.rank(), m));
    rep.check("m4.surjective", surj, "Ind_J -> M4 is onto");

    let equiv = g.generators().into_iter().all(|x| {
        let rows: Vec<RingElement> = ind_j.iter().map(|e| e.left_translate(x)).collect();
        let a_ind = HowellForm::with_transform(&ind_j_m);
        let a = rows
            .iter()
            .map(|r| a_ind.solve(r.coeffs()))
            .collect::<Result<Vec<_>, _>>();
        match a {
            Ok(a) => {
                MatrixZn::from_rows(m, ind_j.len(), &a).mul(&map)
                    == map.mul(&seq.actions[3][g.index(x)])
            }
            Err(_) => false,
        }
    });
    rep.check("m4.equivariant", equiv, "map commutes with the generators");

    let ker = kernel(&map).mul(&ind_j_m);
    let ok = same_span(&ker, &ind_jp_m);
    rep.check(
        "m4.kernel",
        ok,
        "kernel equals Z[G] T_tau (1 + sigma^(s/2))",
    );
    let t2_image = m4.coords(&(&t2 * &seq.b4))?;
    rep.check(
        "m4.t2_zero",
        t2_image.iter().all(|&x| x == 0),
        "T_2 maps to B - B = 0",
    );

    let ranks = [
        free_rank(&ind_jp_m),
        free_rank(&ind_j_m),
        free_rank(&m4.matrix()),
    ];
    let expected = [half as usize, s as usize, half as usize];
    let ok = ranks.iter().zip(expected).all(|(r, e)| *r == Some(e));
    rep.check(
        "m4.ranks",
        ok,
        format!(
            "ranks ({}, {}, {}) expected {:?}",
            rank_str(ranks[0]),
            rank_str(ranks[1]),
            rank_str(ranks[2]),
            expected
        ),
    );
    rep.ranks.insert("IndJprime".into(), ranks[0].unwrap_or(0));
    rep.ranks.insert("IndJ".into(), ranks[1].unwrap_or(0));
    rep.sort();
    Ok(rep)
}

/// Exactness of a short sequence of spans X ⊂ ambient --f--> with given image
/// and kernel, all as row spans in ambient Z/m[G] coordinates.
fn short_exact_spans(
    domain: &MatrixZn,
    f: &MatrixZn,
    kernel_span: &MatrixZn,
    image_span: &MatrixZn,
) -> bool {
    let image = domain.mul(f);
    if !same_span(&image, image_span) {
        return false;
    }
    let kc = kernel(&HowellForm::new(domain).matrix().mul(f));
    let kern = kc.mul(HowellForm::new(domain).matrix());
    same_span(&kern, kernel_span)
}

/// The diagram with rows K' → K → Z[G]T_τ(1+σ^(s/2)), Z[G](1−τ) → Z[G] → Z[G]T_τ,
/// M₃' → M₃ → M₄, columns given by ·B, and horizontal maps ·T_τ.
pub fn verify_kernel_diagram(seq: &FourTermSequence) -> Result<VerificationReport, SequenceError> {
    require_even_s(seq)?;
    let g = seq.group;
    let m = seq.modulus;
    let (d, s) = (g.d() as usize, g.s() as usize);
    let mut rep = VerificationReport::new(seq.descriptor());
    let n = g.order();
    let one = RingElement::one(g, m);
    let t_tau = special_element(g, SpecialKind::TTau, m)?;
    let one_minus_tau = &one - &RingElement::tau_pow(g, m, 1);
    let t2 = &t_tau + &(&RingElement::sigma_pow(g, m, (s / 2) as i64) * &t_tau);

    let ring = MatrixZn::identity(n, m);
    let by_b = right_mul_matrix(&seq.b);
    let by_t = right_mul_matrix(&t_tau);

    let aug = left_module_span(g, m, std::slice::from_ref(&one_minus_tau));
    let ind_j = left_module_span(g, m, std::slice::from_ref(&t_tau));
    let ind_jp = left_module_span(g, m, &[t2]);
    let m3 = seq.modules[2].matrix();
    let m3p = m3.select_rows(&(0..seq.delta_rank).collect::<Vec<_>>());
    let m4 = seq.modules[3].matrix();

    let k = HowellForm::new(&kernel(&by_b)).matrix().clone();
    let kp = HowellForm::new(&crate::znz::span_intersection(&k, &aug))
        .matrix()
        .clone();

    // Columns: top → middle is inclusion, middle → bottom is ·B.
    let col1 = short_exact_spans(&aug, &by_b, &kp, &m3p);
    let col2 = short_exact_spans(&ring, &by_b, &k, &m3);
    let by_b4 = right_mul_matrix(&seq.b4);
    let col3 = short_exact_spans(&ind_j, &by_b4, &ind_jp, &m4);
    rep.check(
        "diagram.column.left",
        col1,
        "0 -> K' -> Z[G](1-t) -> M3' -> 0",
    );
    rep.check("diagram.column.middle", col2, "0 -> K -> Z[G] -> M3 -> 0");
    rep.check(
        "diagram.column.right",
        col3,
        "0 -> Ind_J' -> Ind_J -> M4 -> 0",
    );

    // Rows: left → middle is inclusion, middle → right is ·T_τ.
    let row_top = short_exact_spans(&k, &by_t, &kp, &ind_jp);
    let row_mid = short_exact_spans(&ring, &by_t, &aug, &ind_j);
    let r3 = seq.modules[2].rank();
    let r4 = seq.modules[3].rank();
    let delta_coords =
        MatrixZn::identity(r3, m).select_rows(&(0..seq.delta_rank).collect::<Vec<_>>());
    let row_bot = short_exact_spans(
        &MatrixZn::identity(r3, m),
        &seq.d[2],
        &delta_coords,
        &MatrixZn::identity(r4, m),
    );
    rep.check(
        "diagram.row.top",
        row_top,
        "0 -> K' -> K -> Z[G] T_t (1 + s^(s/2)) -> 0",
    );
    rep.check(
        "diagram.row.middle",
        row_mid,
        "0 -> Z[G](1-t) -> Z[G] -> Z[G] T_t -> 0",
    );
    rep.check("diagram.row.bottom", row_bot, "0 -> M3' -> M3 -> M4 -> 0");

    let square = by_b.mul(&by_t) == by_t.mul(&by_b);
    rep.check("diagram.square", square, "B T_t = T_t B");
    let mut model_square = true;
    for x in g.elements() {
        let x = RingElement::from_element(g, m, x);
        let via_m3 = seq.d[2].apply(&seq.modules[2].coords(&(&x * &seq.b))?);
        let via_ind = seq.modules[3].coords(&(&(&x * &t_tau) * &seq.b4))?;
        model_square &= via_m3 == via_ind;
    }
    rep.check(
        "diagram.square.model",
        model_square,
        "d3(xB) = x T_t b4 in M4",
    );
    let contained =
        HowellForm::new(&aug).contains_span(&kp) && HowellForm::new(&k).contains_span(&kp);
    rep.check(
        "diagram.inclusions",
        contained,
        "K' lies in K and in Z[G](1-t)",
    );

    let rk = free_rank(&k);
    let rkp = free_rank(&kp);
    let exp_k = s * d - s / 2 - (d - 1);
    let exp_kp = (s - 1) * (d - 1);
    rep.check(
        "rank.K",
        rk == Some(exp_k),
        format!("rank K = {} (expected {exp_k})", rank_str(rk)),
    );
    rep.check(
        "rank.Kprime",
        rkp == Some(exp_kp),
        format!("rank K' = {} (expected {exp_kp})", rank_str(rkp)),
    );
    rep.ranks.insert("K".into(), rk.unwrap_or(0));
    rep.ranks.insert("Kprime".into(), rkp.unwrap_or(0));
    let others = [
        ("rank.aug", free_rank(&aug), s * (d - 1)),
        ("rank.ring", free_rank(&ring), s * d),
        ("rank.M3prime", free_rank(&m3p), d - 1),
        ("rank.IndJ", free_rank(&ind_j), s),
        ("rank.IndJprime", free_rank(&ind_jp), s / 2),
    ];
    for (id, r, e) in others {
        rep.check(
            format!("diagram.{id}"),
            r == Some(e),
            format!("{} (expected {e})", rank_str(r)),
        );
    }
    rep.sort();
    Ok(rep)
}

/// For s = 2: (1−στ)(1+στ) = 0, kernels of ·(1±στ) are Z[J](1∓στ), and the
/// two resulting short exact sequences.
pub fn verify_oldlemma14(seq: &FourTermSequence) -> Result<VerificationReport, SequenceError> {
    let g = seq.group;
    if g.s() != 2 {
        return Err(SequenceError::FamilyMismatch(format!(
            "s = 2 required, got s = {}",
            g.s()
        )));
    }
    let m = seq.modulus;
    let d = g.d() as usize;
    let mut rep = VerificationReport::new(seq.descriptor());
    let st = g.mul(g.sigma(), g.tau());
    let minus = RingElement::from_terms(g, m, &[(1, g.identity()), (-1, st)]);
    let plus = RingElement::from_terms(g, m, &[(1, g.identity()), (1, st)]);
    rep.check(
        "oldlemma14.product",
        (&minus * &plus).is_zero(),
        "(1 - st)(1 + st) = 0",
    );

    let zj = |x: &RingElement| {
        let rows: Vec<RingElement> = (0..g.d() as i64)
            .map(|i| &RingElement::tau_pow(g, m, i) * x)
            .collect();
        elements_matrix(g, m, &rows)
    };
    let zj_minus = zj(&minus);
    let zj_plus = zj(&plus);
    let ring = MatrixZn::identity(g.order(), m);
    let by_minus = right_mul_matrix(&minus);
    let by_plus = right_mul_matrix(&plus);
    rep.check(
        "oldlemma14.kernel_minus",
        same_span(&kernel(&by_minus), &zj_plus),
        "ker (1 - st) = Z[J](1 + st)",
    );
    rep.check(
        "oldlemma14.kernel_plus",
        same_span(&kernel(&by_plus), &zj_minus),
        "ker (1 + st) = Z[J](1 - st)",
    );
    let m3 = seq.modules[2].matrix();
    rep.check(
        "oldlemma14.m3",
        same_span(&m3, &zj_minus),
        "M3 = Z[J](1 - st)",
    );
    let seq1 = short_exact_spans(&ring, &by_plus, &m3, &zj_plus);
    let seq2 = short_exact_spans(&ring, &by_minus, &zj_plus, &m3);
    rep.check(
        "oldlemma14.sequence1",
        seq1,
        "0 -> M3 -> Z[G] -> Ind_H' -> 0",
    );
    rep.check(
        "oldlemma14.sequence2",
        seq2,
        "0 -> Ind_H' -> Z[G] -> M3 -> 0",
    );
    let r_minus = free_rank(&zj_minus);
    let r_plus = free_rank(&zj_plus);
    rep.check(
        "oldlemma14.ranks",
        r_minus == Some(d) && r_plus == Some(d),
        format!(
            "ranks {} and {} (expected {d})",
            rank_str(r_minus),
            rank_str(r_plus)
        ),
    );
    let k = kernel(&right_mul_matrix(&seq.b));
    let rk = free_rank(&k);
    rep.check(
        "oldlemma14.rank_K",
        rk == Some(d),
        format!("rank K = {} (expected {d})", rank_str(rk)),
    );
    rep.sort();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, Family};
    use crate::sequences::build_sequence;

    #[test]
    fn structures_pass() {
        for (d, s, t, f, sf) in [
            (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
            (3, 2, 2, Family::Semidirect, SequenceFamily::Semidirect),
            (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
        ] {
            let g = make_group(d, s, t, f).unwrap();
            let seq = build_sequence(g, sf).unwrap();
            for rep in [
                verify_m4_structure(&seq).unwrap(),
                verify_kernel_diagram(&seq).unwrap(),
            ] {
                assert!(rep.all_pass(), "{d},{s},{t} {sf}: {:?}", rep.failures());
            }
            if s == 2 {
                let rep = verify_oldlemma14(&seq).unwrap();
                assert!(rep.all_pass(), "{:?}", rep.failures());
            }
            if sf == SequenceFamily::Semidirect {
                assert!(verify_b_identities(g).unwrap().all_pass());
            }
        }
    }

    #[test]
    fn kernel_rank_s3() {
        let g = make_group(3, 2, 2, Family::Dihedral).unwrap();
        let seq = build_sequence(g, SequenceFamily::DihedralClassic).unwrap();
        let rep = verify_kernel_diagram(&seq).unwrap();
        assert_eq!(rep.ranks["K"], 3);
        assert_eq!(rep.ranks["Kprime"], 2);
    }
}
