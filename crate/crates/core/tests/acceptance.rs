//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every check compares library output against an
//! independent oracle (naive scans, brute-force enumeration, closed forms).

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use typical::analysis::{
    admissible_blocks_count, freq_tables_at, max_run, max_runs_at, typicality_ratio,
};
use typical::bitstream::Finite;
use typical::constructions::{self, MadritschStructure, Polynomial};
use typical::harness::{self, montecarlo, HarnessConfig, Verdict};
use typical::hp::{log2_biguint, Real};
use typical::reductions::{
    log2_derivative, log2_taylor, phi, reduction_f, NatSeqDescriptor, Sequence, TaylorApprox,
};
use typical::{Bit, BitStream, Block, Exec, Prefix};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Outcome)> = vec![
        (
            1,
            "champernowne checkpoints",
            Duration::from_secs(60),
            c1_champernowne,
        ),
        (2, "z exceptionality", Duration::from_secs(60), c2_z),
        (
            3,
            "omega divergence and omega' decay",
            Duration::from_secs(10),
            c3_omega,
        ),
        (
            4,
            "oracle equivalence",
            Duration::from_secs(600),
            c4_oracles,
        ),
        (
            5,
            "admissible-block count",
            Duration::from_secs(30),
            c5_admissible,
        ),
        (
            6,
            "reduction f behaviour",
            Duration::from_secs(300),
            c6_reduction_f,
        ),
        (7, "phi quadrant table", Duration::from_secs(600), c7_phi),
        (8, "Taylor engine", Duration::from_secs(600), c8_taylor),
        (
            9,
            "Monte Carlo baseline",
            Duration::from_secs(600),
            c9_monte_carlo,
        ),
        (
            10,
            "continuity witness",
            Duration::from_secs(600),
            c10_continuity,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let in_time = took <= limit;
        let ok = res.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {name} [{:.1}s / {}s] {}{}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            res.detail,
            if in_time { "" } else { " (over time limit)" }
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

/// Naive longest run: from every start, count ones until the first zero.
fn naive_max_run(bits: &[Bit]) -> u64 {
    let mut best = 0;
    for s in 0..bits.len() {
        let mut k = 0;
        while s + k < bits.len() && bits[s + k] == Bit::One {
            k += 1;
        }
        best = best.max(k as u64);
    }
    best
}

/// Naive overlapping block count.
fn naive_count(bits: &[Bit], block: &[Bit]) -> u64 {
    if block.len() > bits.len() {
        return 0;
    }
    (0..=bits.len() - block.len())
        .filter(|&s| &bits[s..s + block.len()] == block)
        .count() as u64
}

fn bits_of(v: u64, len: usize) -> Vec<Bit> {
    (0..len)
        .rev()
        .map(|k| Bit::from_bool((v >> k) & 1 == 1))
        .collect()
}

/// Longest runs of the notation concatenation with each notation emitted
/// `reps` times, recorded at the end of every `n`-digit section.
fn concat_oracle(reps: u64, max_n: u32) -> Vec<(u64, u64)> {
    let (mut pos, mut cur, mut best) = (0u64, 0u64, 0u64);
    let mut out = Vec::new();
    for n in 1..=max_n {
        for v in (1u64 << (n - 1))..(1u64 << n) {
            for _ in 0..reps {
                for k in (0..n).rev() {
                    pos += 1;
                    if (v >> k) & 1 == 1 {
                        cur += 1;
                        best = best.max(cur);
                    } else {
                        cur = 0;
                    }
                }
            }
        }
        out.push((pos, best));
    }
    out
}

fn c1_champernowne() -> Outcome {
    let oracle = concat_oracle(1, 22);
    let s = constructions::champernowne();
    let positions: Vec<u64> = oracle.iter().map(|&(p, _)| p).collect();
    let scanned = max_runs_at(&s, &positions, Exec::default()).unwrap();
    for (k, (&(p, l), &got)) in oracle.iter().zip(&scanned).enumerate() {
        let n = k as u64 + 1;
        if p != ((n - 1) << n) + 1 || l != n || got != n {
            return outcome(
                false,
                format!("n={n}: position {p}, oracle L {l}, scanned L {got}"),
            );
        }
    }
    let p20 = BigUint::from((19u64 << 20) + 1);
    let r = typicality_ratio(&BigUint::from(20u32), &p20)
        .unwrap()
        .to_f64();
    let expected = 20.0 / (((19u64 << 20) + 1) as f64).log2();
    let rel = ((r - expected) / expected).abs();
    outcome(
        rel < 5e-7,
        format!("L(p_n)=n for n<=22 by scan and oracle; ratio(20)={r:.9} vs {expected:.9}"),
    )
}

fn c2_z() -> Outcome {
    for a in [2u32, 3] {
        let reps = 1u64 << a;
        let oracle = concat_oracle(reps, 14);
        let s = constructions::strictly_normal_z(a).unwrap();
        let positions: Vec<u64> = oracle.iter().map(|&(p, _)| p).collect();
        let scanned = max_runs_at(&s, &positions, Exec::default()).unwrap();
        for (k, (&(p, l), &got)) in oracle.iter().zip(&scanned).enumerate() {
            let n = k as u64 + 1;
            if p != (((n - 1) << n) + 1) << a || l != n * reps || got != l {
                return outcome(false, format!("a={a} n={n}: oracle L {l}, scanned L {got}"));
            }
        }
        // ratio > 0.9 (2^a/a) n/(n + log2 n) is equivalent to
        // (2^(a n) n^a)^10 > p_n^9 once L = n 2^a is substituted.
        for n in 10u64..=30 {
            let cp = s.checkpoint(n).unwrap();
            if cp.exact_l != BigUint::from(n * reps) {
                return outcome(false, format!("a={a} n={n}: checkpoint L {}", cp.exact_l));
            }
            let lhs = ((BigUint::one() << (a as u64 * n)) * BigUint::from(n).pow(a)).pow(10);
            let rhs = cp.position.pow(9);
            if lhs <= rhs {
                return outcome(false, format!("a={a} n={n}: ratio bound not exceeded"));
            }
        }
    }
    outcome(
        true,
        "a=2,3: L(p_n)=n 2^a by scan for n<=14, bound holds exactly for n=10..30",
    )
}

fn e_oracle(i: u64) -> u64 {
    ((i << i) as f64 * (i as f64).ln()).ceil().max(1.0) as u64
}

/// `log2` from the bit length and the top 64 bits.
fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    ((x >> shift).to_u64().unwrap() as f64).log2() + shift as f64
}

fn c3_omega() -> Outcome {
    let st = MadritschStructure::new();
    let omega = constructions::madritsch_omega();
    let omega_p = constructions::omega_prime();
    let mut b = BigUint::zero();
    let mut a = BigUint::zero();
    let mut rows = Vec::new();
    for i in 1u64..=12 {
        let e = e_oracle(i);
        let l = BigUint::from(i).pow(1u32 << i);
        b += &l * ((1u64 << i) * i * e);
        a += &l * (i * e);
        if i >= 4 {
            let cw = omega.checkpoint(i).unwrap();
            let cp = omega_p.checkpoint(i).unwrap();
            if cw.position != b || cp.position != b {
                return outcome(false, format!("B_{i} differs from the closed form"));
            }
            if cw.exact_l != BigUint::from(i * e) || cp.exact_l != BigUint::from(i) {
                return outcome(
                    false,
                    format!("n={i}: L(omega)={} L(omega')={}", cw.exact_l, cp.exact_l),
                );
            }
            let lb = log2_big(&b);
            rows.push(((i * e) as f64 / lb, i as f64 / lb, 2.0 * i as f64 / lb));
        }
    }
    let inc = rows.windows(2).all(|w| w[1].0 > w[0].0);
    let dec = rows.windows(2).all(|w| w[1].1 < w[0].1);
    let bounded = rows.iter().all(|r| r.1 <= r.2);
    let share = st.modified_share(12);
    let oracle_share = num_rational::BigRational::new(a.into(), b.into());
    let share_ok =
        share == oracle_share && share < num_rational::BigRational::new(1.into(), 1000.into());
    outcome(
        inc && dec && bounded && share_ok,
        format!(
            "omega ratio {:.3}->{:.3} increasing={inc}; omega' ratio {:.2e}->{:.2e} decreasing={dec}; A/B(12)={:.3e}",
            rows[0].0,
            rows.last().unwrap().0,
            rows[0].1,
            rows.last().unwrap().1,
            Real::from_ratio(&share).to_f64()
        ),
    )
}

fn compare_prefix(label: &str, s: &BitStream, n: u64, m: usize) -> Result<(), String> {
    let prefix = s.take(n, u64::MAX).map_err(|e| e.to_string())?;
    let bits = prefix.digits();
    let positional: Vec<Bit> = [1, n / 3 + 1, n]
        .iter()
        .map(|&i| s.digit_at(&BigUint::from(i)))
        .collect();
    let expect = [bits[0], bits[(n / 3) as usize], bits[n as usize - 1]];
    if positional != expect {
        return Err(format!(
            "{label}: digit_at disagrees with the streamed prefix"
        ));
    }
    let l = max_run(s, n, Exec::default());
    let naive = naive_max_run(bits);
    if l != naive {
        return Err(format!("{label}: L={l}, naive {naive}"));
    }
    let t = &freq_tables_at(s, &[n], m, Exec::default()).map_err(|e| e.to_string())?[0];
    for len in 1..=m {
        for v in 0..(1u64 << len) {
            let blk = bits_of(v, len);
            let got = t.count(&Block::new(blk.clone())).unwrap();
            let want = naive_count(bits, &blk);
            if got != want {
                return Err(format!(
                    "{label}: count of {v:0len$b} is {got}, naive {want}"
                ));
            }
        }
    }
    Ok(())
}

fn c4_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mismatches = Vec::new();
    for trial in 0..1000 {
        let n = rng.gen_range(1..=10_000usize);
        let density = rng.gen_range(0.05..0.95);
        let bits: Vec<Bit> = (0..n)
            .map(|_| Bit::from_bool(rng.gen_bool(density)))
            .collect();
        let s = BitStream::new(Finite::new("random", Prefix::new(bits)));
        let m = rng.gen_range(1..=4);
        if let Err(e) = compare_prefix(&format!("random #{trial}"), &s, n as u64, m) {
            mismatches.push(e);
        }
    }
    let gens: Vec<(&str, BitStream)> = vec![
        ("champernowne", constructions::champernowne()),
        ("y", constructions::strictly_typical_y()),
        ("z(2)", constructions::strictly_normal_z(2).unwrap()),
        ("z(3)", constructions::strictly_normal_z(3).unwrap()),
        ("omega", constructions::madritsch_omega()),
        ("omega'", constructions::omega_prime()),
        (
            "nakai x",
            constructions::nakai_poly(Polynomial::identity(), 2).unwrap(),
        ),
        (
            "nakai 2x",
            constructions::nakai_poly(Polynomial::parse("2,0").unwrap(), 2).unwrap(),
        ),
        (
            "nakai x^2/3+x",
            constructions::nakai_poly(Polynomial::parse("1/3,1,0").unwrap(), 2).unwrap(),
        ),
        ("f(identity)", reduction_f(NatSeqDescriptor::identity())),
        ("phi(identity)", phi(&NatSeqDescriptor::identity())),
    ];
    for (label, s) in &gens {
        if let Err(e) = compare_prefix(label, s, 100_000, 4) {
            mismatches.push(e);
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "1000 random prefixes + {} generators at 1e5, {} mismatches{}",
            gens.len(),
            mismatches.len(),
            mismatches
                .first()
                .map(|e| format!(": {e}"))
                .unwrap_or_default()
        ),
    )
}

fn c5_admissible() -> Outcome {
    let mut checked = 0;
    for n in 2u32..=16 {
        let runs: Vec<u32> = (0..1u32 << n)
            .map(|w| {
                let (mut cur, mut best) = (0, 0);
                for k in 0..n {
                    if (w >> k) & 1 == 1 {
                        cur += 1;
                        best = best.max(cur);
                    } else {
                        cur = 0;
                    }
                }
                best
            })
            .collect();
        let log2n = (n as f64).log2();
        for m in 1u32..=8 {
            let lo = 1.0 - 1.0 / m as f64;
            let hi = 1.0 + 1.0 / m as f64;
            let brute = runs
                .iter()
                .filter(|&&l| {
                    let r = l as f64 / log2n;
                    r > lo && r < hi
                })
                .count() as u64;
            let dp = admissible_blocks_count(n, m).unwrap();
            if dp != brute {
                return outcome(false, format!("n={n} m={m}: DP {dp}, enumeration {brute}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} (n, m) pairs, zero mismatches"))
}

/// `floor(T)` computed in `f64` from the explicit series, or `None` when `T`
/// sits too close to an integer to decide in double precision.
fn t_floor_oracle(m: u64, b: u64) -> Option<i64> {
    let a = 2.0 * b as f64 / 3.0;
    let x = 0.5f64;
    let mut sum = 0.0;
    for k in 1..=m.min(200) {
        let term = x.powi(k as i32) / (k as f64 * std::f64::consts::LN_2);
        sum += if k % 2 == 1 { term } else { -term };
    }
    let t = 2f64.powf(1.0 / m as f64) * (a.log2() + sum);
    let f = t.floor();
    (t - f > 1e-9 && f + 1.0 - t > 1e-9).then_some(f as i64)
}

fn tail_ratios(s: &BitStream, blocks: u64) -> Vec<f64> {
    let ns: Vec<u64> = (1..=100).map(|k| blocks / 2 + k * blocks / 200).collect();
    let pos: Vec<u64> = ns.iter().map(|n| n * (n + 1) / 2).collect();
    let l = max_runs_at(s, &pos, Exec::default()).unwrap();
    l.iter()
        .zip(&pos)
        .map(|(&l, &p)| l as f64 / (p as f64).log2())
        .collect()
}

fn c6_reduction_f() -> Outcome {
    let blocks = 10_000u64;
    let id = NatSeqDescriptor::identity();
    let one = NatSeqDescriptor::constant(1).unwrap();
    // Block structure against the double-precision evaluation of T.
    for (d, m_of) in [(&id, (|n: u64| n) as fn(u64) -> u64), (&one, |_| 1)] {
        let s = reduction_f(d.clone());
        let digits = s.take(300 * 301 / 2, u64::MAX).unwrap();
        for n in 1u64..=300 {
            let start = ((n - 1) * n / 2) as usize;
            let block = &digits.digits()[start..start + n as usize];
            let ones = block.iter().take_while(|b| b.is_one()).count() as u64;
            if block[ones as usize..].iter().any(|b| b.is_one()) {
                return outcome(false, format!("{d}: block {n} is not 1^k 0^(n-k)"));
            }
            if let Some(f) = t_floor_oracle(m_of(n), n * (n + 1) / 2) {
                let want = (f.max(0) as u64).min(n);
                if ones != want {
                    return outcome(
                        false,
                        format!("{d}: block {n} has {ones} ones, oracle {want}"),
                    );
                }
            }
        }
    }
    let r_id = tail_ratios(&reduction_f(id), blocks);
    let r_one = tail_ratios(&reduction_f(one), blocks);
    let (id_lo, id_hi) = r_id
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));
    let one_lo = r_one.iter().copied().fold(f64::MAX, f64::min);
    outcome(
        id_lo > 0.85 && id_hi < 1.15 && one_lo >= 1.8,
        format!("identity tail ratios in [{id_lo:.4}, {id_hi:.4}]; const:1 tail min {one_lo:.3}"),
    )
}

fn c7_phi() -> Outcome {
    let cfg = HarnessConfig::default();
    let rep = harness::experiments::verify_phi(&cfg).unwrap();
    let fails: Vec<&str> = rep
        .claims
        .iter()
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| c.id.as_str())
        .collect();
    let n = 1_000_000u64;
    let mut freqs = Vec::new();
    for (q, d, _, _) in harness::experiments::phi_quadrants() {
        if d.even().in_p3() {
            continue;
        }
        let p = phi(&d).take(n, u64::MAX).unwrap();
        let ones = p.digits().iter().filter(|b| b.is_one()).count();
        freqs.push((q, ones as f64 / n as f64));
    }
    let low = freqs.iter().all(|&(_, f)| f < 0.45);
    outcome(
        fails.is_empty() && low && freqs.len() == 2,
        format!(
            "{} claims, failing: {:?}; even-bounded freq(1) at 1e6: {:?}",
            rep.claims.len(),
            fails,
            freqs
        ),
    )
}

fn c8_taylor() -> Outcome {
    let mut worst = 0.0f64;
    for b in [1_000u64, 1_000_000] {
        let exact = log2_biguint(&BigUint::from(b));
        for m in 1..=40u64 {
            let t = TaylorApprox::default_center(BigUint::from(b), m).unwrap();
            let err = (log2_taylor(&t) - &exact).abs().to_f64();
            let bound = 0.5f64.powi(m as i32) / ((m + 1) as f64 * std::f64::consts::LN_2);
            if err > bound {
                return outcome(
                    false,
                    format!("B={b} M={m}: error {err:e} > bound {bound:e}"),
                );
            }
            worst = worst.max(err / bound);
        }
    }
    let mut worst_rel = 0.0f64;
    for a in [2u64, 10, 100] {
        let ar = Real::from_u64(a);
        let h = &ar * Real::from_f64(1e-5);
        for k in 1..=6u64 {
            // k-th central difference of log2 at a.
            let mut acc = Real::zero();
            let mut binom = 1u64;
            for j in 0..=k {
                let x = &ar + &h * Real::from_f64(k as f64 / 2.0 - j as f64);
                let term = x.log2() * Real::from_u64(binom);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
                binom = binom * (k - j) / (j + 1);
            }
            let fd = acc / h.powi(k as usize);
            let exact = log2_derivative(k, &ar);
            let rel = ((fd - &exact) / exact).abs().to_f64();
            worst_rel = worst_rel.max(rel);
        }
    }
    outcome(
        worst_rel < 1e-6,
        format!("max error/bound {worst:.3}; max derivative relative error {worst_rel:.2e}"),
    )
}

fn naive_trial(seed: u64, trial: u64, n: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (mut cur, mut best, mut left) = (0u64, 0u64, n);
    while left > 0 {
        let w = rng.next_u64();
        for k in 0..left.min(64) {
            if (w >> (63 - k)) & 1 == 1 {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        left = left.saturating_sub(64);
    }
    best
}

fn c9_monte_carlo() -> Outcome {
    let (trials, n, seed) = (500, 1u64 << 20, 20240601);
    let a = montecarlo::monte_carlo_erdos_renyi(trials, n, seed, Exec::default()).unwrap();
    let b = montecarlo::monte_carlo_erdos_renyi(trials, n, seed, Exec::Sequential).unwrap();
    let same = a.runs == b.runs && a.mean.to_bits() == b.mean.to_bits();
    let naive_ok = (0..5).all(|t| naive_trial(seed, t, n) == a.runs[t as usize]);
    outcome(
        same && naive_ok && a.mean > 0.9 && a.mean < 1.3,
        format!(
            "mean {:.4}, sd {:.4}; reproducible={same}; naive trials agree={naive_ok}",
            a.mean, a.std_dev
        ),
    )
}

fn random_tail(rng: &mut ChaCha8Rng) -> NatSeqDescriptor {
    match rng.gen_range(0..3) {
        0 => NatSeqDescriptor::identity(),
        1 => NatSeqDescriptor::constant(rng.gen_range(1..=50)).unwrap(),
        _ => NatSeqDescriptor::interleave(
            NatSeqDescriptor::constant(rng.gen_range(1..=50)).unwrap(),
            NatSeqDescriptor::identity(),
        ),
    }
}

fn c10_continuity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    for k in 1..=20u64 {
        for _ in 0..100 {
            let prefix: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=60)).collect();
            let d1 = random_tail(&mut rng).with_prefix(prefix.clone()).unwrap();
            let d2 = random_tail(&mut rng).with_prefix(prefix).unwrap();
            let len = k * (k + 1) / 2;
            let a = reduction_f(d1.clone()).take(len, u64::MAX).unwrap();
            let b = reduction_f(d2.clone()).take(len, u64::MAX).unwrap();
            if a != b {
                return outcome(
                    false,
                    format!("k={k}: {d1} and {d2} disagree within {len} digits"),
                );
            }
            pairs += 1;
        }
    }
    outcome(
        true,
        format!("{pairs} descriptor pairs, images agree on k(k+1)/2 digits"),
    )
}
