use super::*;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    ratio(a, b)
}

fn iv(a: (i64, i64), b: (i64, i64)) -> DensityInterval {
    DensityInterval::from_ratios(a, b).unwrap()
}

fn pt(a: i64, b: i64) -> DensityInterval {
    iv((a, b), (a, b))
}

#[test]
fn combine_examples() {
    assert_eq!(combine_sequence(&[pt(1, 1), pt(1, 1)], 3).unwrap(), pt(1, 4));
    let x = iv((1, 7), (2, 7));
    for r in 3..6 {
        assert_eq!(combine_sequence(std::slice::from_ref(&x), r).unwrap(), x);
    }
    for m in 1..8 {
        let got = combine_sequence(&vec![point_t3_of_2(); m], 3).unwrap();
        assert_eq!(got, pt(1, (m * m) as i64));
    }
    // ṫ_4: roots of order 3, 1/8 has cube root 1/2.
    assert_eq!(combine_sequence(&[pt(1, 1), pt(1, 8)], 4).unwrap(), pt(1, 27));
}

#[test]
fn combine_rejects_bad_input() {
    assert!(combine_sequence(&[], 3).is_err());
    assert!(combine_sequence(&[pt(1, 2)], 2).is_err());
    assert!(combine_sequence(&[iv((0, 1), (1, 2)), pt(1, 1)], 3).is_err());
}

#[test]
fn de_caen_and_sidorenko_examples() {
    assert_eq!(de_caen_lower(3, 4).unwrap(), q(1, 6));
    assert_eq!(de_caen_lower(3, 2).unwrap(), q(1, 1));
    assert_eq!(de_caen_lower(4, 6).unwrap(), q(1, 20));
    assert!(de_caen_lower(3, 1).is_err());
    assert!(de_caen_lower(1, 4).is_err());

    let s = sidorenko_upper(3, 4).unwrap();
    assert_eq!((s.value, s.realized), (q(1, 4), true));
    assert_eq!(sidorenko_upper(3, 2).unwrap().value, q(1, 1));
    let s = sidorenko_upper(3, 6).unwrap();
    assert_eq!((s.value, s.realized), (q(1, 9), true));
    assert!(!sidorenko_upper(3, 5).unwrap().realized);
    assert!(sidorenko_upper(4, 2).is_err());
}

#[test]
fn t_interval_examples() {
    assert_eq!(t_interval(3, 5).unwrap(), iv((1, 6), (1, 4)));
    assert_eq!(t_interval(3, 4).unwrap(), iv((438_334, 1_000_000), (4, 9)));
    assert_eq!(t_interval(3, 3).unwrap(), pt(1, 1));
    assert!(t_interval(3, 2).is_err());
    let report = t_interval_report(3, 4).unwrap();
    assert!(report.derivation.iter().any(|s| s.citation.contains("0.561666")));
}

#[test]
fn t3_limits() {
    assert_eq!(t3_limit_odd(1).unwrap(), q(1, 1));
    assert_eq!(t3_limit_odd(2).unwrap(), q(1, 4));
    assert_eq!(t3_limit_odd(3).unwrap(), q(1, 9));
    assert!(t3_limit_odd(0).is_err());

    let t34 = t_interval(3, 4).unwrap();
    assert_eq!(t3_limit_even(1, &t34).unwrap(), t34);
    assert_eq!(t3_limit_even(2, &pt(4, 9)).unwrap(), pt(4, 25));
    let x = t3_limit_even(2, &t34).unwrap();
    assert!(x.is_subset_of(&iv((158, 1000), (161, 1000))), "{x}");
    assert_eq!(x.hi(), &q(4, 25));
    // Independent evaluation of the lower end: (1 + 1/sqrt(0.438334))^-2.
    let direct = (1.0 + 1.0 / 0.438334f64.sqrt()).powi(-2);
    assert!((x.lo_f64() - direct).abs() < 1e-10, "{} vs {direct}", x.lo_f64());
    assert!(x.lo_f64() <= direct + 1e-15);
    assert!(t3_limit_even(2, &iv((0, 1), (1, 2))).is_err());
}

fn table(entries: &[(usize, DensityInterval)]) -> BTreeMap<usize, DensityInterval> {
    entries.iter().cloned().collect()
}

#[test]
fn components_limit_odd_is_exact() {
    for m in 1..=6 {
        let rep = t_limit_components(3, 2 * m + 1, m, &table(&[(2, point_t3_of_2())])).unwrap();
        assert_eq!(rep.interval, pt(1, (m * m) as i64), "m={m}");
        assert_eq!(rep.minimizers, vec![IndependenceSequence::repeated(2, m).unwrap()], "m={m}");
    }
}

#[test]
fn components_limit_examples() {
    let rep = t_limit_components(3, 5, 2, &BTreeMap::new()).unwrap();
    assert_eq!(rep.interval, pt(1, 4));
    assert_eq!(rep.minimizers, vec![IndependenceSequence::new(vec![2, 2]).unwrap()]);
    assert!(rep.derivation.iter().any(|s| s.rule == "co-density-check"));

    let t34 = t_interval(3, 4).unwrap();
    let rep = t_limit_components(3, 6, 2, &table(&[(2, point_t3_of_2()), (3, t34.clone())])).unwrap();
    assert_eq!(rep.interval, t3_limit_even(2, &t34).unwrap());
    assert_eq!(rep.minimizers, vec![IndependenceSequence::new(vec![2, 3]).unwrap()]);
}

#[test]
fn components_limit_reports_overlaps() {
    // ṫ_4 at k = 7, m = 2: {3,3} gives exactly 1/8, {1,5} is only enclosed
    // in [1/10, 9/25] and so may still win.
    let rep = t_limit_components(4, 7, 2, &BTreeMap::new()).unwrap();
    assert!(!rep.interval.is_point());
    assert_eq!(rep.interval.hi(), &q(1, 8));
    assert_eq!(rep.minimizers.len(), 2);
}

#[test]
fn components_limit_errors() {
    assert!(t_limit_components(3, 5, 5, &BTreeMap::new()).is_err());
    assert!(t_limit_components(3, 5, 0, &BTreeMap::new()).is_err());
    assert!(t_limit_components(3, 5, 4, &BTreeMap::new()).is_err());
    assert!(t_limit_components(3, 5, 2, &table(&[(2, iv((0, 1), (1, 1)))])).is_err());
    assert!(t_limit_components(4, 7, 2, &table(&[(2, pt(1, 1))])).is_err());
}

#[test]
fn report_json_shape() {
    let rep = t_interval_report(3, 5).unwrap();
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["quantity"], "t_{3,5}");
    assert_eq!(json["lo"], "1/6");
    assert_eq!(json["hi"], "1/4");
    assert_eq!(json["derivation"][0]["rule"], "de-caen-lower");
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    assert_eq!(keys.len(), 4);
    let back: BoundReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn average_lemma_examples() {
    let c = average_lemma_check(2).unwrap();
    assert!(c.passed());
    assert_eq!((c.first.lhs.as_str(), c.first.rhs.as_str()), ("1/3", "1/4"));
    assert_eq!((c.second.lhs.as_str(), c.second.rhs.as_str()), ("1/6", "4/25"));
    let c = average_lemma_check(3).unwrap();
    assert_eq!((c.first.lhs.as_str(), c.first.rhs.as_str()), ("1/6", "1/9"));
    assert!((2..=50).all(|l| average_lemma_check(l).unwrap().passed()));
    assert!(average_lemma_check(1).is_err());
}

#[test]
fn max_components_examples() {
    assert_eq!(max_components(5, 3).unwrap(), 2);
    assert_eq!(max_components(4, 3).unwrap(), 1);
    assert_eq!(max_components(7, 3).unwrap(), 3);
    assert!(max_components(3, 3).is_err());
}

#[test]
fn jensen_examples() {
    let rep = jensen_check(&[1.0, 1.0], &[0.5, 0.5], 3).unwrap();
    assert!((rep.lhs - 0.25).abs() < 1e-15 && (rep.rhs - 0.25).abs() < 1e-15);
    let rep = jensen_check(&[0.3], &[1.0], 4).unwrap();
    assert!((rep.lhs - 0.3).abs() < 1e-15 && (rep.rhs - 0.3).abs() < 1e-15);
    let rep = jensen_check(&[1.0, 4.0], &[0.5, 0.5], 3).unwrap();
    assert!((rep.lhs - 0.625).abs() < 1e-15);
    assert!((rep.rhs - 4.0 / 9.0).abs() < 1e-15);
    assert!(rep.holds);
    assert!(jensen_check(&[1.0], &[0.5], 3).is_err());
    assert!(jensen_check(&[0.0], &[1.0], 3).is_err());
    assert!(jensen_check(&[1.0, 1.0], &[1.0], 3).is_err());
}

#[test]
fn binom_shift_examples() {
    assert!(binom_shift_compare(4, 4, 3).unwrap());
    assert!(binom_shift_compare(4, 5, 3).unwrap());
    assert!(binom_shift_compare(5, 5, 2).unwrap());
    assert!(binom_shift_compare(3, 5, 3).is_err());
    assert!(binom_shift_compare(5, 4, 3).is_err());
}

#[test]
fn thm_max_examples() {
    let got: Vec<u64> = [6, 7, 8, 9, 12].iter().map(|&n| thm_max_value(n).unwrap()).collect();
    assert_eq!(got, vec![2, 5, 8, 14, 40]);
    assert!(thm_max_value(5).is_err());
}

fn arb_interval() -> impl Strategy<Value = DensityInterval> {
    (1i64..1000, 0i64..1000, 1i64..1000).prop_map(|(a, w, d)| {
        let lo = q(a, a + w + d);
        let hi = q(a + w, a + w + d).max(lo.clone());
        DensityInterval::new(lo, hi).unwrap()
    })
}

proptest! {
    #[test]
    fn combine_is_monotone(xs in prop::collection::vec(arb_interval(), 1..5), i in 0usize..5, r in 3usize..6) {
        let base = combine_sequence(&xs, r).unwrap();
        let i = i % xs.len();
        let mut wide = xs.clone();
        let lo = wide[i].lo() / BigRational::from_integer(2.into());
        let hi = (wide[i].hi() + BigRational::one()) / BigRational::from_integer(2.into());
        wide[i] = DensityInterval::new(lo, hi).unwrap();
        let wider = combine_sequence(&wide, r).unwrap();
        prop_assert!(base.is_subset_of(&wider));
    }

    #[test]
    fn combine_is_associative(xs in prop::collection::vec(arb_interval(), 2..6), split in 1usize..5) {
        let split = split.min(xs.len() - 1);
        let direct = combine_sequence(&xs, 3).unwrap();
        let mut staged = vec![combine_sequence(&xs[..split], 3).unwrap()];
        staged.extend_from_slice(&xs[split..]);
        let staged = combine_sequence(&staged, 3).unwrap();
        // Rounding is outward at every stage, so the staged enclosure
        // contains the direct one and is only slightly wider.
        prop_assert!(direct.is_subset_of(&staged));
        let slack = q(1, 1_000_000);
        prop_assert!(direct.lo() - staged.lo() < slack);
        prop_assert!(staged.hi() - direct.hi() < slack);
    }

    #[test]
    fn combine_exact_on_squares(ks in prop::collection::vec(1i64..20, 1..6)) {
        let xs: Vec<DensityInterval> = ks.iter().map(|&k| pt(1, k * k)).collect();
        let total: i64 = ks.iter().sum();
        prop_assert_eq!(combine_sequence(&xs, 3).unwrap(), pt(1, total * total));
    }

    #[test]
    fn jensen_holds(ts in prop::collection::vec(0.01f64..10.0, 1..7), ws in prop::collection::vec(0.01f64..1.0, 7), r in 2usize..5) {
        let w: f64 = ws[..ts.len()].iter().sum();
        let p: Vec<f64> = ws[..ts.len()].iter().map(|x| x / w).collect();
        prop_assume!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let rep = jensen_check(&ts, &p, r).unwrap();
        prop_assert!(rep.holds);
        let at_star = jensen_check(&ts, &rep.p_star, r);
        if let Ok(eq) = at_star {
            prop_assert!((eq.lhs - eq.rhs).abs() <= 1e-9);
        }
    }
}

#[test]
fn sandwich_up_to_1000() {
    for l in 2..=1000 {
        assert!(de_caen_lower(3, l).unwrap() <= sidorenko_upper(3, l).unwrap().value, "l={l}");
    }
}

#[test]
fn binom_shift_grid() {
    for r in 2..60 {
        for a in r + 1..=60 {
            for b in a..=60 {
                assert!(binom_shift_compare(a, b, r).unwrap(), "a={a} b={b} r={r}");
            }
        }
    }
}

#[test]
fn thm_max_density_converges() {
    for n in 6..=200usize {
        let d = q(thm_max_value(n).unwrap() as i64, crate::binom(n, 3) as i64);
        // Two complete halves approach 1/4 from below.
        assert!(d <= q(1, 4), "n={n}");
        assert!(d >= q(1, 4) - q(10, n as i64), "n={n}");
    }
}
