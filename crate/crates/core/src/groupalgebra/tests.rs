use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::pcgroup::{PcPresentation, Word, DEFAULT_ORDER_CAP};

fn group(p: u32, n: usize, powers: &[(usize, &[(usize, u8)])], comms: &[(usize, usize, &[(usize, u8)])]) -> FiniteGroup {
    let mut pres = PcPresentation::new(FieldSpec::new(p).unwrap(), n);
    for &(i, w) in powers {
        pres.set_power(i, Word::new(w.to_vec())).unwrap();
    }
    for &(j, i, w) in comms {
        pres.set_commutator(j, i, Word::new(w.to_vec())).unwrap();
    }
    FiniteGroup::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap()
}

fn d4() -> AlgebraContext {
    AlgebraContext::new(group(2, 3, &[(1, &[(2, 1)])], &[(1, 0, &[(2, 1)])]))
}

fn q8() -> AlgebraContext {
    AlgebraContext::new(group(
        2,
        3,
        &[(0, &[(2, 1)]), (1, &[(2, 1)])],
        &[(1, 0, &[(2, 1)])],
    ))
}

fn heis27() -> AlgebraContext {
    AlgebraContext::new(group(3, 3, &[], &[(1, 0, &[(2, 1)])]))
}

fn c3_wr_c3() -> AlgebraContext {
    AlgebraContext::new(group(3, 4, &[], &[(1, 0, &[(2, 1)]), (2, 0, &[(3, 1)])]))
}

fn cyclic(p: u32, k: usize) -> AlgebraContext {
    let powers: Vec<(usize, Vec<(usize, u8)>)> = (0..k - 1).map(|i| (i, vec![(i + 1, 1)])).collect();
    let refs: Vec<(usize, &[(usize, u8)])> = powers.iter().map(|(i, w)| (*i, w.as_slice())).collect();
    AlgebraContext::new(group(p, k, &refs, &[]))
}

fn c9_x_c3() -> AlgebraContext {
    AlgebraContext::new(group(3, 3, &[(0, &[(1, 1)])], &[]))
}

fn span_of(ctx: &AlgebraContext, vs: impl IntoIterator<Item = Vec<u8>>) -> Subspace {
    let mut s = ctx.zero_space();
    for v in vs {
        s.insert(v);
    }
    s
}

/// Span of all `u s v` with `u, v ∈ G`.
fn naive_ideal(ctx: &AlgebraContext, s: &Subspace) -> Subspace {
    let n = ctx.dim();
    let mut out = ctx.zero_space();
    for row in s.basis() {
        for u in 0..n {
            let us = ctx.left_mul_group(row, u);
            for v in 0..n {
                out.insert(ctx.right_mul_group(&us, v));
            }
        }
    }
    out
}

/// Weight spaces from brackets with every group element, no orbit reduction.
fn naive_weight_spaces(ctx: &AlgebraContext) -> Vec<Subspace> {
    let n = ctx.dim();
    let mut spaces = vec![ctx.full_space()];
    loop {
        let w = spaces.last().unwrap();
        let next = span_of(
            ctx,
            w.basis().flat_map(|row| (0..n).map(move |g| ctx.bracket_group(row, g))),
        );
        let done = next.is_zero();
        spaces.push(next);
        if done {
            return spaces;
        }
    }
}

fn naive_upper_chain(ctx: &AlgebraContext) -> Vec<Subspace> {
    let n = ctx.dim();
    let mut spaces = vec![ctx.full_space()];
    while !spaces.last().unwrap().is_zero() {
        let prev = spaces.last().unwrap();
        let brackets = span_of(
            ctx,
            prev.basis().flat_map(|row| (0..n).map(move |g| ctx.bracket_group(row, g))),
        );
        spaces.push(naive_ideal(ctx, &brackets));
    }
    spaces
}

fn random_element(ctx: &AlgebraContext, rng: &mut ChaCha8Rng) -> AlgebraElement {
    use rand::Rng;
    let p = ctx.field().p();
    ctx.wrap((0..ctx.dim()).map(|_| rng.gen_range(0..p)).collect())
}

#[test]
fn brackets_vanish_on_equal_and_commuting_arguments() {
    let ctx = heis27();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_element(&ctx, &mut rng);
    assert!(ctx.lie_bracket(&a, &a).is_zero());
    let z = ctx.group().gen_indices()[2];
    let x = ctx.group().gen_indices()[0];
    let bracket = ctx.lie_bracket(&ctx.basis_element(x), &ctx.basis_element(z));
    assert!(bracket.is_zero());
}

#[test]
fn d4_generator_bracket_has_weight_two() {
    let ctx = d4();
    let g = ctx.group().gen_indices();
    let b = ctx.lie_bracket(&ctx.basis_element(g[0]), &ctx.basis_element(g[1]));
    assert_eq!(b.coeffs().weight(), 2);
    let expected = ctx.add(
        &ctx.basis_element(ctx.group().mul(g[0], g[1])),
        &ctx.basis_element(ctx.group().mul(g[1], g[0])),
    );
    assert_eq!(b, expected);
}

#[test]
fn weight_spaces_match_unreduced_brackets() {
    for ctx in [d4(), q8(), heis27(), c3_wr_c3()] {
        let fast = ctx.lie_weight_spaces(ctx.dim() + 2).unwrap();
        assert_eq!(fast, naive_weight_spaces(&ctx));
    }
}

#[test]
fn weight_space_examples() {
    let d4w = d4().lie_weight_spaces(10).unwrap();
    assert!(!d4w[1].is_zero());
    assert!(d4w[2].is_zero());
    let hw = heis27().lie_weight_spaces(10).unwrap();
    assert!(!hw[2].is_zero());
    assert!(hw[3].is_zero());
    assert!(cyclic(3, 2).lie_weight_spaces(10).unwrap()[1].is_zero());
    assert!(d4().lie_weight_spaces(1).is_err());
}

#[test]
fn ideal_closure_examples() {
    let ctx = d4();
    assert!(ctx.ideal_closure(&ctx.zero_space()).is_zero());
    let minus_one = ctx.field().neg(1);
    let gen_diffs = span_of(
        &ctx,
        ctx.group().gen_indices().iter().map(|&g| {
            let mut v = vec![0u8; ctx.dim()];
            v[g] = 1;
            v[0] = minus_one;
            v
        }),
    );
    let delta = ctx.ideal_closure(&gen_diffs);
    assert_eq!(delta.dim(), 7);
    assert_eq!(delta, ctx.augmentation_ideal());
    let w2 = &ctx.lie_weight_spaces(3).unwrap()[1];
    let r2 = ctx.ideal_closure(w2);
    assert_eq!(r2.dim(), 4);
    assert_eq!(r2, naive_ideal(&ctx, w2));
}

#[test]
fn ideal_closure_matches_two_sided_products() {
    for ctx in [q8(), heis27(), c3_wr_c3()] {
        let w = ctx.lie_weight_spaces(4).unwrap();
        for s in &w[1..] {
            let closed = ctx.ideal_closure(s);
            assert_eq!(closed, naive_ideal(&ctx, s));
            assert_eq!(ctx.ideal_closure(&closed), closed);
        }
    }
}

#[test]
fn lower_index_examples() {
    assert_eq!(cyclic(3, 2).lower_lie_chain().unwrap().t_lower(), 2);
    assert_eq!(d4().lower_lie_chain().unwrap().t_lower(), 3);
    assert_eq!(q8().lower_lie_chain().unwrap().t_lower(), 3);
    assert_eq!(heis27().lower_lie_chain().unwrap().t_lower(), 4);
}

#[test]
fn trivial_group_algebra_is_commutative() {
    let ctx = AlgebraContext::new(group(5, 0, &[], &[]));
    assert_eq!(ctx.lower_lie_chain().unwrap().t_lower(), 2);
    assert_eq!(ctx.upper_lie_chain().unwrap().stop_index(), 2);
    assert_eq!(ctx.augmentation_chain().unwrap().stop_index(), 1);
}

#[test]
fn upper_chain_matches_brackets_with_all_elements() {
    for ctx in [d4(), q8(), heis27(), c3_wr_c3()] {
        let upper = ctx.upper_lie_chain().unwrap();
        assert_eq!(upper.spaces(), naive_upper_chain(&ctx).as_slice());
    }
    assert_eq!(d4().upper_lie_chain().unwrap().stop_index(), 3);
    assert_eq!(cyclic(2, 3).upper_lie_chain().unwrap().stop_index(), 2);
}

#[test]
fn lower_chain_sits_inside_upper_chain() {
    for ctx in [d4(), q8(), heis27(), c3_wr_c3()] {
        let lower = ctx.lower_lie_chain().unwrap();
        let upper = ctx.upper_lie_chain().unwrap();
        assert_eq!(lower.chain().term(2), upper.term(2));
        for n in 1..=upper.stop_index() {
            assert!(lower.chain().term(n).is_subspace_of(&upper.term(n)).unwrap());
        }
        assert!(lower.t_lower() <= upper.stop_index());
        for chain in [lower.chain(), &upper] {
            let dims = chain.dims();
            assert!(dims.windows(2).all(|w| w[1] < w[0]));
            assert_eq!(*dims.last().unwrap(), 0);
        }
    }
}

#[test]
fn lower_chain_terms_are_closures_of_weight_spaces() {
    let ctx = c3_wr_c3();
    let lower = ctx.lower_lie_chain().unwrap();
    let naive = naive_weight_spaces(&ctx);
    assert_eq!(lower.weight_spaces(), naive.as_slice());
    for n in 2..=lower.t_lower() {
        assert_eq!(lower.chain().term(n), naive_ideal(&ctx, &naive[n - 1]));
        let gens = span_of(&ctx, lower.ideal_generators(n).iter().cloned());
        assert_eq!(ctx.ideal_closure(&gens), lower.chain().term(n));
    }
}

/// `Δ^k` by repeated products with `Δ`.
fn naive_augmentation_index(ctx: &AlgebraContext) -> usize {
    let delta = ctx.augmentation_ideal();
    let mut power = delta.clone();
    let mut k = 1;
    while !power.is_zero() {
        power = ctx.product_space(&power, &delta);
        k += 1;
    }
    k
}

#[test]
fn augmentation_index_examples() {
    assert_eq!(cyclic(2, 1).augmentation_chain().unwrap().stop_index(), 2);
    assert_eq!(cyclic(5, 1).augmentation_chain().unwrap().stop_index(), 5);
    let c93 = c9_x_c3();
    assert_eq!(c93.augmentation_chain().unwrap().stop_index(), 11);
    let d = d4();
    assert_eq!(naive_augmentation_index(&d), 5);
    assert_eq!(d.augmentation_chain().unwrap().stop_index(), 5);
    for ctx in [q8(), heis27(), cyclic(3, 2)] {
        let chain = ctx.augmentation_chain().unwrap();
        assert_eq!(chain.stop_index(), naive_augmentation_index(&ctx));
    }
}

#[test]
fn product_space_examples() {
    let ctx = cyclic(2, 1);
    let delta = ctx.augmentation_ideal();
    assert_eq!(delta.dim(), 1);
    assert!(ctx.product_space(&delta, &delta).is_zero());
    let h = heis27();
    assert!(h.product_space(&h.full_space(), &h.zero_space()).is_zero());
    let lower = h.lower_lie_chain().unwrap();
    let r3 = lower.chain().term(3);
    let sq = h.product_space(&r3, &r3);
    assert!(sq.is_subspace_of(&lower.chain().term(5)).unwrap());
}

#[test]
fn ideal_product_matches_product_space() {
    let ctx = c3_wr_c3();
    let lower = ctx.lower_lie_chain().unwrap();
    for m in 2..lower.t_lower() {
        for n in 2..lower.t_lower() {
            let a = lower.chain().term(m);
            let b = lower.chain().term(n);
            let fast = ctx.ideal_product(&a, lower.ideal_generators(n));
            let full = ctx.product_space(&a, &b);
            assert_eq!(fast, full, "m = {m}, n = {n}");
            assert_eq!(ctx.ideal_closure(&full), full);
        }
    }
}

#[test]
fn inverses_carry_a_witness() {
    let ctx = c3_wr_c3();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let u = ctx.random_unit(&mut rng);
        assert_eq!(ctx.augmentation(&u), 1);
        let inv = ctx.inverse(&u).unwrap();
        assert_eq!(ctx.mul(&u, &inv), ctx.one());
        assert_eq!(ctx.inverse_of_normalized_unit(&u), inv);
        let scaled = ctx.scale(&u, 2);
        assert_eq!(ctx.mul(&scaled, &ctx.inverse(&scaled).unwrap()), ctx.one());
    }
    let nonunit = ctx.sub(&ctx.basis_element(1), &ctx.one());
    assert!(ctx.inverse(&nonunit).is_none());
}

#[test]
fn unit_commutators_of_commuting_units_are_trivial() {
    let ctx = cyclic(3, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = ctx.random_unit(&mut rng);
    let y = ctx.random_unit(&mut rng);
    assert_eq!(ctx.unit_commutator(&x, &y).unwrap(), ctx.one());
    let h = heis27();
    let x = h.random_unit(&mut rng);
    assert_eq!(h.unit_commutator(&x, &x).unwrap(), h.one());
}

#[test]
fn checks_pass_on_small_groups() {
    for ctx in [d4(), q8(), heis27(), c3_wr_c3()] {
        let lower = ctx.lower_lie_chain().unwrap();
        let t = lower.t_lower();
        let mut reports = ctx.check_preliminary_facts(&lower, t, 8, 11);
        reports.push(ctx.check_cube_power_containment(&lower, t));
        reports.push(ctx.check_triple_commutator_absorption(&lower, 8, 11));
        if ctx.field().p() != 2 {
            reports.push(ctx.check_quadruple_commutator_square(&lower, 8, 11).unwrap());
        }
        for r in reports {
            assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
            assert!(r.violations.is_empty());
            assert!(r.instances > 0 || r.name == "cube_power_containment", "{r:?}");
        }
    }
}

#[test]
fn quadruple_commutator_check_needs_odd_p() {
    let ctx = d4();
    let lower = ctx.lower_lie_chain().unwrap();
    let err = ctx.check_quadruple_commutator_square(&lower, 4, 0).unwrap_err();
    assert!(matches!(err, crate::Error::Precondition(_)));
}

#[test]
fn triple_unit_commutators_in_d4_are_trivial() {
    let ctx = d4();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let units: Vec<_> = (0..3).map(|_| ctx.random_unit(&mut rng)).collect();
        assert_eq!(ctx.left_normed_unit_commutator(&units), ctx.one());
    }
}

#[test]
fn sampled_checks_are_deterministic() {
    let ctx = heis27();
    let lower = ctx.lower_lie_chain().unwrap();
    let a = ctx.check_unit_lower_central(&lower, 4, 6, 42);
    let b = ctx.check_unit_lower_central(&lower, 4, 6, 42);
    assert_eq!(a, b);
    assert_eq!(a.seed, Some(42));
}

#[test]
fn containment_detects_a_planted_violation() {
    // Claiming that 1 generates R^[3] makes R^[2] R^[3] too large.
    let ctx = heis27();
    let mut lower = ctx.lower_lie_chain().unwrap();
    lower.ideal_gens[2] = vec![ctx.one().into_vec()];
    let report = ctx.check_lie_power_products(&lower);
    assert_eq!(report.status, CheckStatus::Fail);
    assert!(!report.violations.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_bilinear(seed in any::<u64>()) {
        let ctx = c3_wr_c3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&ctx, &mut rng);
        let b = random_element(&ctx, &mut rng);
        let c = random_element(&ctx, &mut rng);
        let lhs = ctx.lie_bracket(&ctx.add(&a, &b), &c);
        let rhs = ctx.add(&ctx.lie_bracket(&a, &c), &ctx.lie_bracket(&b, &c));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            ctx.lie_bracket(&a, &b),
            ctx.scale(&ctx.lie_bracket(&b, &a), ctx.field().neg(1))
        );
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let ctx = q8();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&ctx, &mut rng);
        let b = random_element(&ctx, &mut rng);
        let c = random_element(&ctx, &mut rng);
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
    }

    #[test]
    fn closure_is_idempotent_and_contains_its_seed(seed in any::<u64>(), count in 1usize..4) {
        let ctx = heis27();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = span_of(&ctx, (0..count).map(|_| random_element(&ctx, &mut rng).into_vec()));
        let closed = ctx.ideal_closure(&s);
        prop_assert!(s.is_subspace_of(&closed).unwrap());
        prop_assert_eq!(ctx.ideal_closure(&closed), closed.clone());
        prop_assert_eq!(closed, naive_ideal(&ctx, &s));
    }
}
