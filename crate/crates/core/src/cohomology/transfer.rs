//! Restriction and corestriction for a subgroup, and the Shapiro comparison
//! for permutation modules Z/d[G/S].

use crate::groups::{GroupTable, MetacyclicGroup, Subgroup};
use crate::report::Claim;
use crate::znz::MatrixZn;

use super::cochain::{add_action, decode, Cochain};
use super::group::cohomology_group;
use super::module::ZnModule;
use super::{CohomologyError, DegreePolicy};

/// Restriction of a cochain on G to the subgroup with table `sub`.
pub fn restrict(sub: &GroupTable, c: &Cochain) -> Cochain {
    let emb = sub.embedding();
    let ambient = c.order;
    Cochain::from_fn(c.degree, sub.order(), c.rank, c.modulus, |t| {
        let idx = t.iter().fold(0, |acc, &g| acc * ambient + emb[g]);
        c.value(idx).to_vec()
    })
}

/// Right coset data for S in G: representatives and the coset of each element.
#[derive(Clone, Debug)]
pub struct RightCosets {
    /// Representative (ambient index) of each coset; the first is the identity.
    pub reps: Vec<usize>,
    /// Coset number of each ambient element.
    pub coset_of: Vec<usize>,
}

impl RightCosets {
    pub fn new(g: &GroupTable, sub: &GroupTable) -> Self {
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(x);
            for &s in sub.embedding() {
                coset_of[g.mul(s, x)] = k;
            }
        }
        RightCosets { reps, coset_of }
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    fn rep_of(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }
}

/// Corestriction of a cochain on S with values in res M:
/// (cor f)(g₁,…,gₙ) = Σ_r r⁻¹·f(r₀g₁r₁⁻¹, r₁g₂r₂⁻¹, …) with r₀ = r and r_k the
/// representative of S·r_{k−1}g_k.
pub fn corestrict(g: &GroupTable, sub: &GroupTable, module: &ZnModule, f: &Cochain) -> Cochain {
    let cosets = RightCosets::new(g, sub);
    let m = f.modulus;
    let n = f.degree;
    let order = g.order();
    let mut out = Cochain::zero(n, order, f.rank, m);
    let mut tuple = vec![0usize; n];
    let mut inner = vec![0usize; n];
    let actions: Vec<MatrixZn> = module.actions.iter().map(|a| a.reduce_mod(m)).collect();
    let mut acc = vec![0u64; f.rank];
    for idx in 0..out.num_tuples() {
        decode(idx, order, &mut tuple);
        acc.iter_mut().for_each(|x| *x = 0);
        for &r in &cosets.reps {
            let mut cur = r;
            for k in 0..n {
                let prod = g.mul(cur, tuple[k]);
                let next = cosets.rep_of(prod);
                let s = g.mul(prod, g.inv(next));
                inner[k] = sub
                    .local_index(s)
                    .expect("coset cocycle lies in the subgroup");
                cur = next;
            }
            let sidx = inner.iter().fold(0, |acc, &x| acc * sub.order() + x);
            add_action(&mut acc, f.value(sidx), &actions[g.inv(r)], 1, m);
        }
        out.set_value(idx, &acc);
    }
    out
}

/// Permutation module Z/d[G/S] on left cosets xS, with h·e_{xS} = e_{hxS}.
pub fn induced_module(g: &GroupTable, sub: &GroupTable, d: u64) -> ZnModule {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &s in sub.embedding() {
            coset_of[g.mul(x, s)] = count;
        }
        count += 1;
    }
    let reps: Vec<usize> = (0..count)
        .map(|k| {
            coset_of
                .iter()
                .position(|&c| c == k)
                .expect("coset is nonempty")
        })
        .collect();
    let actions = (0..n)
        .map(|h| {
            let mut a = MatrixZn::zeros(count, count, d);
            for (k, &x) in reps.iter().enumerate() {
                a.set(k, coset_of[g.mul(h, x)], 1);
            }
            a
        })
        .collect();
    ZnModule::new("Ind", d, count, actions)
}

/// cor∘res = [G:S]·id on the class generators of Hⁿ(G, M).
pub fn cor_res_check(
    g: &GroupTable,
    sub: &GroupTable,
    module: &ZnModule,
    n: usize,
    policy: &DegreePolicy,
) -> Result<Claim, CohomologyError> {
    let h = cohomology_group(g, module, n, policy)?;
    let index = (g.order() / sub.order()) as i64;
    let mut ok = true;
    for z in h.generators() {
        let back = corestrict(g, sub, module, &restrict(sub, z));
        ok &= h.classify(&back)? == h.classify(&z.scale(index))?;
    }
    Ok(Claim::new(
        format!("cor_res.{}.n{n}", module.name),
        ok,
        format!(
            "cor o res = {index} id on {} generators of H^{n} (factors {:?})",
            h.generators().len(),
            h.invariant_factors()
        ),
    ))
}

/// Hⁿ(G, Z/d[G/S]) and Hⁿ(S, Z/d) have the same invariant factors.
pub fn shapiro_check(
    group: &MetacyclicGroup,
    s: &Subgroup,
    n: usize,
    policy: &DegreePolicy,
) -> Result<Claim, CohomologyError> {
    let d = group.d();
    let g = GroupTable::of_group(group);
    let sub = GroupTable::of_subgroup(group, s);
    let ind = induced_module(&g, &sub, d);
    let lhs = cohomology_group(&g, &ind, n, policy)?;
    let rhs = cohomology_group(
        &sub,
        &ZnModule::trivial("Z/d", d, 1, sub.order()),
        n,
        policy,
    )?;
    Ok(Claim::new(
        format!("shapiro.{}.n{n}", s.name),
        lhs.invariant_factors() == rhs.invariant_factors(),
        format!(
            "H^{n}(G, Ind) factors {:?}, H^{n}(S, Z/{d}) factors {:?}",
            lhs.invariant_factors(),
            rhs.invariant_factors()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, Family, SubgroupName};
    use crate::sequences::{build_sequence, SequenceFamily};

    #[test]
    fn cor_res_and_shapiro() {
        let policy = DegreePolicy::default();
        for (d, s, t, f, fam) in [
            (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
            (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
        ] {
            let g = make_group(d, s, t, f).unwrap();
            let table = GroupTable::of_group(&g);
            let seq = build_sequence(g, fam).unwrap();
            for name in [SubgroupName::H, SubgroupName::J] {
                let sub = g.subgroup(name).unwrap();
                let st = GroupTable::of_subgroup(&g, &sub);
                for n in 0..=1 {
                    assert!(
                        shapiro_check(&g, &sub, n, &policy).unwrap().passed(),
                        "shapiro {d},{s} {name} n={n}"
                    );
                    for k in 0..4 {
                        let m = ZnModule::from_sequence_mod_d(&seq, k);
                        let c = cor_res_check(&table, &st, &m, n, &policy).unwrap();
                        assert!(c.passed(), "{d},{s} {name} M{} n={n}: {}", k + 1, c.detail);
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_to_full_group_is_identity() {
        let g = make_group(3, 2, 2, Family::Dihedral).unwrap();
        let table = GroupTable::of_group(&g);
        let full = GroupTable::of_subgroup(&g, &g.subgroup(SubgroupName::Full).unwrap());
        let c = Cochain::from_fn(2, 6, 1, 3, |t| vec![(t[0] * 7 + t[1]) as u64]);
        assert_eq!(restrict(&full, &c), c);
        let m = ZnModule::trivial("Z/3", 3, 1, table.order());
        assert_eq!(corestrict(&table, &full, &m, &c), c);
    }
}
