use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use pseudotour::exec::Exec;
use pseudotour::probability::*;
use rand::{Rng, SeedableRng};

// Sextuple enumeration straight from the event definitions.
fn brute_t16(n: usize) -> (u64, u64, u64) {
    let (mut total, mut c12, mut c4) = (0u64, 0u64, 0u64);
    for i in 2..n {
        for j in i + 1..n {
            for k in 2..n {
                for l in k + 1..n {
                    for r in 1..=n {
                        if r == k - 1 || r == k {
                            continue;
                        }
                        for s in 1..=n {
                            if s == l - 1 || s == l {
                                continue;
                            }
                            total += 1;
                            let tail = i >= 3 && k < r && r < n && l < s && s < n;
                            if j <= k && !tail {
                                c12 += 1;
                            }
                            if i >= 3
                                && i <= k
                                && k < j
                                && j <= l
                                && l < n
                                && (r + 2 <= k || r == n)
                                && (s + 2 <= l || s == n)
                            {
                                c4 += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    (total, c12, c4)
}

#[test]
fn t16_counts_match_enumeration() {
    for n in 8..=16u64 {
        let (total, c12, c4) = brute_t16(n as usize);
        let c = counts_theorem_1_6(n).unwrap();
        assert_eq!(c.total, BigInt::from(total), "total n={n}");
        assert_eq!(c.count_cases_1_2, BigInt::from(c12), "cases 1,2 n={n}");
        assert_eq!(c.count_case_4, BigInt::from(c4), "case 4 n={n}");
    }
}

#[test]
fn t16_frozen_values() {
    let c = counts_theorem_1_6(8).unwrap();
    assert_eq!(
        (c.total, c.count_cases_1_2, c.count_case_4),
        (BigInt::from(8100), BigInt::from(1245), BigInt::from(616))
    );
    let c = counts_theorem_1_6(9).unwrap();
    assert_eq!(
        (c.total, c.count_cases_1_2, c.count_case_4),
        (BigInt::from(21609), BigInt::from(3367), BigInt::from(1596))
    );
}

#[test]
fn t16_counts_bounded() {
    for n in 8..=200u64 {
        let c = counts_theorem_1_6(n).unwrap();
        assert!(c.count_cases_1_2 >= BigInt::zero() && c.count_case_4 >= BigInt::zero());
        assert!(&c.count_cases_1_2 + &c.count_case_4 <= c.total, "n={n}");
    }
}

#[test]
fn t16_limit() {
    let p = to_f64(&p_at_least_two(1_000_000).unwrap());
    assert!((p - 143.0 / 180.0).abs() < 1e-3, "{p}");
}

#[test]
fn t15_counts_match_enumeration() {
    for n in 4..=12u64 {
        let (mut succ, mut fail) = (0u64, 0u64);
        for j in 3..=n {
            for r in 2..j {
                for s in 1..=n {
                    if s == r || s == j {
                        continue;
                    }
                    if s > j {
                        succ += 1;
                    } else {
                        fail += 1;
                    }
                }
            }
        }
        let (cs, cf) = intersection_counts(n).unwrap();
        assert_eq!((cs, cf), (succ.into(), fail.into()), "n={n}");
        assert_eq!(
            p_proper_intersection(n).unwrap(),
            BigRational::new(succ.into(), (succ + fail).into())
        );
    }
}

#[test]
fn t11_exhaustive() {
    for n in 4..=12u64 {
        let (mut hit, mut all) = (0i64, 0i64);
        for j in 3..=n {
            for k in 2..=n {
                if k != j {
                    all += 1;
                    hit += i64::from(k > j);
                }
            }
        }
        assert_eq!(
            p_admissible_3cycle(n).unwrap(),
            BigRational::new(hit.into(), all.into())
        );
    }
}

#[test]
fn ratio_of_closed_forms() {
    for n in 4..200u64 {
        let a = p_admissible_3cycle(n).unwrap();
        let b = p_proper_intersection(n).unwrap();
        assert!(a > BigRational::zero() && a < BigRational::one());
        assert_eq!(b / a, BigRational::new(2.into(), 3.into()));
    }
}

fn surjections(r: u32, n: u32) -> u64 {
    // count maps {1..r} -> {1..n} hitting every box by odometer enumeration
    let mut digits = vec![0u32; r as usize];
    let mut count = 0;
    loop {
        let mut seen = vec![false; n as usize];
        for &d in &digits {
            seen[d as usize] = true;
        }
        count += u64::from(seen.iter().all(|&b| b));
        let mut i = 0;
        loop {
            if i == digits.len() {
                return count;
            }
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn occupancy_matches_surjections() {
    for n in 1..=6u32 {
        for r in 0..=12u32 {
            if (n as u64).pow(r) > 3_000_000 {
                // larger cases go through the recurrence oracle below
                continue;
            }
            let want = BigRational::new(surjections(r, n).into(), BigInt::from(n).pow(r));
            assert_eq!(occupancy_all_occupied(r, n).unwrap(), want, "r={r} n={n}");
        }
    }
}

#[test]
fn occupancy_matches_stirling_recurrence() {
    // surjections(r, n) = n * (S(r-1, n-1) + S(r-1, n)) with S the surjection count
    let mut s = vec![vec![BigInt::zero(); 7]; 13];
    s[0][0] = BigInt::one();
    for r in 1..=12 {
        for n in 1..=6 {
            s[r][n] = BigInt::from(n) * (&s[r - 1][n - 1] + &s[r - 1][n]);
        }
    }
    for n in 1..=6u32 {
        for r in 0..=12u32 {
            let want = BigRational::new(s[r as usize][n as usize].clone(), BigInt::from(n).pow(r));
            assert_eq!(occupancy_all_occupied(r, n).unwrap(), want, "r={r} n={n}");
        }
    }
}

#[test]
fn occupancy_monotone() {
    for n in 1..=50u32 {
        let mut prev = BigRational::zero();
        for r in 0..=120u32 {
            let p = occupancy_all_occupied(r, n).unwrap();
            assert!(p >= prev && p <= BigRational::one(), "n={n} r={r}");
            prev = p;
        }
    }
}

#[test]
fn power_sums_by_loop() {
    for k in 1..=5u32 {
        for n in 1..=40u64 {
            let want: BigInt = (1..=n).map(|j| BigInt::from(j).pow(k)).sum();
            assert_eq!(power_sum(k, n).unwrap(), want);
        }
    }
}

#[test]
fn hoeffding_dominates_exact_binomial_tail() {
    let exact: f64 = (0..=40).map(|x| binomial_pmf(100, 0.5, x)).sum();
    let bound = hoeffding_tail(100.0, 0.5, 0.2, Tail::Lower).unwrap();
    assert!(exact <= bound, "{exact} > {bound}");
    let upper: f64 = (60..=100).map(|x| binomial_pmf(100, 0.5, x)).sum();
    assert!(upper <= hoeffding_tail(100.0, 0.5, 0.2, Tail::Upper).unwrap());
}

#[test]
fn binomial_pmf_sums_to_one() {
    let s: f64 = (0..=30).map(|x| binomial_pmf(30, 0.3, x)).sum();
    assert!((s - 1.0).abs() < 1e-12);
    let h: f64 = (0..=20).map(|x| hypergeometric_pmf(100, 30, 20, x)).sum();
    assert!((h - 1.0).abs() < 1e-12);
}

#[test]
fn hypergeometric_close_to_binomial() {
    for total in [10_000u64, 50_000] {
        let good = total / 10;
        let draws = 20;
        for x in [1, 2] {
            let h = hypergeometric_pmf(total, good, draws, x);
            let b = binomial_pmf(draws, good as f64 / total as f64, x);
            assert!((h - b).abs() / b < 0.05, "N={total} x={x}");
        }
    }
}

#[test]
fn tv_bound_covers_simulation() {
    let (r, n, m) = (40u64, 4u64, 0u64);
    let lambda = lambda_star(r, n, m);
    let trials = 200_000;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut hist = vec![0u64; n as usize + 1];
    for _ in 0..trials {
        let mut boxes = vec![0u32; n as usize];
        for _ in 0..r {
            boxes[rng.gen_range(0..n as usize)] += 1;
        }
        hist[boxes.iter().filter(|&&b| b as u64 <= m).count()] += 1;
    }
    let mut pois = (-lambda).exp();
    let mut tv = 0.0;
    let mut mass = 0.0;
    for (k, &h) in hist.iter().enumerate() {
        if k > 0 {
            pois *= lambda / k as f64;
        }
        mass += pois;
        tv += (h as f64 / trials as f64 - pois).abs();
    }
    tv = (tv + (1.0 - mass)) / 2.0;
    let bound = poisson_occupancy_tv_bound(r, n, m).unwrap();
    assert!(tv <= bound, "tv {tv} bound {bound}");
}

#[test]
fn mc_small_cases() {
    let p = mc_admissible_3cycle(5, 400_000, 1, Exec::default()).unwrap();
    assert!((p - 1.0 / 3.0).abs() < 0.01, "{p}");
    let q = mc_proper_intersection(5, 400_000, 1, Exec::default()).unwrap();
    assert!((q - 2.0 / 9.0).abs() < 0.01, "{q}");
}

#[test]
fn mc_two_admissible_reference_values() {
    let p20 = mc_two_admissible(20, 200_000, 3).unwrap();
    assert!((p20 - 0.831).abs() < 0.01, "{p20}");
    assert_eq!(p20, mc_two_admissible(20, 200_000, 3).unwrap());
}

#[test]
fn mc_independent_of_exec() {
    let a = mc_two_admissible_with(30, 50_000, 9, Exec::Sequential).unwrap();
    let b = mc_two_admissible_with(30, 50_000, 9, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn occupancy_in_unit_interval(r in 0u32..60, n in 1u32..30) {
        let p = occupancy_all_occupied(r, n).unwrap();
        prop_assert!(p >= BigRational::zero() && p <= BigRational::one());
        if r < n {
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn hoeffding_in_unit_interval(a in 1.0f64..1e4, p in 0.01f64..0.99, alpha in 0.01f64..0.99) {
        let b = hoeffding_tail(a, p, alpha, Tail::Lower).unwrap();
        prop_assert!((0.0..=1.0).contains(&b));
    }
}
