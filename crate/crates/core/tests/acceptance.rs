//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{path, paths_up_to, random_path, regions_with_cells, BOTTLES};
use fssp_core::cni::{cni_verdict, hand_status, ConfigType};
use fssp_core::extension::{fg_table, ni_bruteforce, ni_check, Extent, NiOutcome};
use fssp_core::grid::{radius, Config, PathConfig, RegionConfig};
use fssp_core::mft::{
    ai_is_safe, available_info, free_hand_simplified, is_safe, mft_bounds, mft_formula, mft_localmap, t_tilde,
    two_path_simplified, window, FormulaOutcome, Limits, Safeness,
};
use fssp_core::solution::{
    build_cc, build_reflection, firing_interval, format_big, greedy_cover, simulate_cc, simulate_lm,
    simulate_reflection, state_bounds, StateBoundKind, PATH_WRAPPER, REGION_WRAPPER,
};
use fssp_core::Variation;

type Check = Result<String, String>;

/// (a, b, interval low, interval high, selected)
type Row = (i32, i32, i32, i32, bool);

type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn line(a: usize, b: usize) -> Config {
    Config::Path(PathConfig::line(a, b))
}

fn lim() -> Limits {
    Limits::default()
}

fn c1_line_values() -> Check {
    let start = Instant::now();
    let mut seen = Vec::new();
    for (a, b, want) in [(3, 3, 9), (3, 4, 11), (3, 5, 11)] {
        let got = mft_localmap(&line(a, b), Variation::LineAb, &lim()).map_err(|e| e.to_string())?.value;
        ensure(got == want, || format!("C_{{{a},{b}}}: {got} != {want}"))?;
        seen.push(got);
    }
    for a in 0..=4usize {
        for (b, want) in [(a, 3 * a), (a + 1, 3 * a + 2), (a + 2, 3 * a + 2)] {
            let got = mft_localmap(&line(a, b), Variation::LineAb, &lim()).map_err(|e| e.to_string())?.value as usize;
            ensure(got == want, || format!("C_{{{a},{b}}}: {got} != {want}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("C33/C34/C35 = {seen:?}, a = 0..4 all match, {:.2?}", start.elapsed()))
}

fn c2_chain() -> Check {
    let start = Instant::now();
    let c = line(3, 3);
    let Safeness::Safe(chain) = is_safe(&c, 8, Variation::LineAb, &lim()).map_err(|e| e.to_string())? else {
        return Err("t = 8 reported unsafe".into());
    };
    ensure(chain.terminal_radius() == 9, || format!("terminal radius {}", chain.terminal_radius()))?;
    for (k, pair) in chain.configs.windows(2).enumerate() {
        let v = chain.links[k];
        let same = available_info(&pair[0], v, 8).unwrap() == available_info(&pair[1], v, 8).unwrap();
        ensure(same, || format!("link {k} at {v} does not share the local map"))?;
    }
    let unsafe9 = !is_safe(&c, 9, Variation::LineAb, &lim()).map_err(|e| e.to_string())?.is_safe();
    ensure(unsafe9, || "t = 9 reported safe".into())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("chain of {} configs reaches radius 9; t = 9 unsafe", chain.configs.len()))
}

fn c3_window() -> Check {
    let right = window(11, 30, -11, 11).map_err(|e| e.to_string())?;
    let left = window(-11, 30, -11, 11).map_err(|e| e.to_string())?;
    ensure(right == (-9, 11) && left == (-11, 9), || format!("{right:?} {left:?}"))?;
    Ok("u = 11 -> (-9, 11), u = -11 -> (-11, 9)".into())
}

fn c4_table() -> Check {
    // (member, r, s, rows (a, b, a', b', marked))
    let members: [(i32, i32, &[Row]); 5] = [
        (
            -11,
            11,
            &[
                (-11, 9, -11, 8, true),
                (-11, 10, -10, 8, false),
                (-11, 11, -8, 8, false),
                (-10, 11, -8, 10, false),
                (-9, 11, -8, 11, true),
            ],
        ),
        (-11, 10, &[(-11, 9, -11, 8, true), (-11, 10, -10, 8, false), (-10, 10, -10, 10, true)]),
        (-10, 11, &[(-10, 10, -10, 10, true), (-10, 11, -8, 10, false), (-9, 11, -8, 11, true)]),
        (
            -12,
            10,
            &[(-12, 9, -12, 6, true), (-12, 10, -10, 6, false), (-11, 10, -10, 8, false), (-10, 10, -10, 10, true)],
        ),
        (
            -10,
            12,
            &[(-10, 10, -10, 10, true), (-10, 11, -8, 10, false), (-10, 12, -6, 10, false), (-9, 12, -6, 12, true)],
        ),
    ];
    let mut count = 0;
    for (k, (r, s, rows)) in members.iter().enumerate() {
        let mut intervals = Vec::new();
        for &(a, b, lo, hi, _) in rows.iter() {
            let got = firing_interval(a, b, 30, *r, *s);
            ensure(got == (lo, hi), || format!("C{k} A({a},{b}): {got:?} != ({lo},{hi})"))?;
            intervals.push(got);
            count += 1;
        }
        let picks = greedy_cover(&intervals, *r, *s).map_err(|e| e.to_string())?;
        let marked: Vec<usize> = rows.iter().enumerate().filter(|(_, row)| row.4).map(|(i, _)| i).collect();
        ensure(picks == marked, || format!("C{k}: picked {picks:?}, marked {marked:?}"))?;
    }
    ensure(count == 19, || format!("{count} rows"))?;
    Ok("19 intervals reproduced; greedy picks match every member's marks".into())
}

fn c5_counts() -> Check {
    let start = Instant::now();
    let cc = state_bounds(30, StateBoundKind::Cc(6)).1;
    ensure(cc == BigUint::from(131_072u32), || format!("cc {cc}"))?;
    ensure(&cc * PATH_WRAPPER == BigUint::from(786_432u32), || "cc x6".into())?;
    let rf = state_bounds(30, StateBoundKind::RefGpath).1;
    ensure(rf == BigUint::from(128u32) && &rf * PATH_WRAPPER == BigUint::from(768u32), || format!("ref {rf}"))?;
    let (lo, hi) = state_bounds(20, StateBoundKind::RegLm);
    let lo = format_big(&(lo.unwrap() * REGION_WRAPPER));
    let hi = format_big(&(hi * REGION_WRAPPER));
    ensure(lo.starts_with("2.9547e31"), || format!("region lower {lo}"))?;
    ensure(hi == "3.3253e8103", || format!("region upper {hi}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("131072, 786432, 128, 768, {lo}, {hi}"))
}

fn c6_simplified() -> Check {
    let row = |j: i32| match j {
        49..=53 => Extent::Finite((55 - j) as u32),
        54 => Extent::Finite(1),
        55 => Extent::Finite(0),
        _ => Extent::Infinite,
    };
    let s = free_hand_simplified(-47, 55, row);
    ensure(s.value == 149 && s.j0 == Some(51), || format!("{s:?}"))?;
    let FormulaOutcome::Exact(m) = mft_formula(&PathConfig::line(47, 55)) else {
        return Err("line formula inconclusive".into());
    };
    ensure(m.value == 157, || format!("line value {}", m.value))?;
    Ok("injected row -> 149 with j0 = 51; line r = -47, s = 55 -> 157".into())
}

fn c7_oracle() -> Check {
    let start = Instant::now();
    let mut configs = paths_up_to(8);
    configs.extend(BOTTLES.iter().map(|b| path(b.0)));
    let failures: Vec<String> = configs
        .par_iter()
        .filter_map(|c| {
            let cfg = Config::Path(c.clone());
            let m = match mft_localmap(&cfg, Variation::GTwoPath, &lim()) {
                Ok(m) => m.value,
                Err(e) => return Some(format!("{c}: {e}")),
            };
            let (r, s) = (c.r(), c.s());
            let hs = hand_status(c);
            let (tt, _) = t_tilde(c);
            let (lo, hi) = mft_bounds(c);
            if hs.kind == ConfigType::I && m as i32 != -r + s + (-r).max(s) {
                return Some(format!("{c}: type I formula vs {m}"));
            }
            if cni_verdict(c).verdict && m != tt {
                return Some(format!("{c}: CNI but mft {m} != T~ {tt}"));
            }
            if m > tt || m < lo || m > hi {
                return Some(format!("{c}: {m} outside [{lo}, {hi}] or above T~ {tt}"));
            }
            if r == 0 {
                let table = fg_table(c);
                let v = two_path_simplified(s, |j| table.get(0, j).g).value;
                if v != m {
                    return Some(format!("{c}: two-path form {v} != {m}"));
                }
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || failures[..failures.len().min(5)].join("; "))?;
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!(
        "{} configurations incl. {} closed-hand fixtures, {:.1?}",
        configs.len(),
        BOTTLES.len(),
        start.elapsed()
    ))
}

fn c8_interference() -> Check {
    let start = Instant::now();
    let mut configs = paths_up_to(9);
    configs.extend(BOTTLES.iter().map(|b| path(b.0)));
    let windows: usize = configs
        .par_iter()
        .map(|c| {
            let table = fg_table(c);
            let mut n = 0;
            for e in table.entries() {
                if !e.w_finite() {
                    continue;
                }
                let brute = ni_bruteforce(c, e.window, 0);
                assert_ne!(brute, NiOutcome::Indeterminate, "{c} {}", e.window);
                assert_eq!(ni_check(c, e.window), brute == NiOutcome::Holds, "{c} {}", e.window);
                n += 1;
            }
            n
        })
        .sum();
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{} configurations, {windows} finite windows, {:.1?}", configs.len(), start.elapsed()))
}

fn c9_facts() -> Check {
    let start = Instant::now();
    let configs = paths_up_to(7);
    let checked: usize = configs
        .par_iter()
        .map(|c| {
            let cfg = Config::Path(c.clone());
            let mut n = 0;
            for t in radius(&cfg)..=8 {
                let whole = is_safe(&cfg, t, Variation::GTwoPath, &lim()).unwrap().is_safe();
                for v in cfg.positions() {
                    let local = ai_is_safe(&cfg, v, t, Variation::GTwoPath, &lim()).unwrap();
                    assert_eq!(local, whole, "{c} t={t} v={v}");
                    n += 1;
                }
            }
            n
        })
        .sum();
    let regions: Vec<Config> =
        (1..=5).flat_map(regions_with_cells).map(|cells| Config::Region(RegionConfig::new(cells).unwrap())).collect();
    let region_pairs: usize = regions
        .par_iter()
        .map(|cfg| {
            let mut n = 0;
            for t in radius(cfg)..=6 {
                let whole = is_safe(cfg, t, Variation::TwoReg, &lim()).unwrap().is_safe();
                for v in cfg.positions() {
                    assert_eq!(ai_is_safe(cfg, v, t, Variation::TwoReg, &lim()).unwrap(), whole, "t={t} v={v}");
                    n += 1;
                }
            }
            n
        })
        .sum();
    Ok(format!(
        "{} paths, {checked} (node, t) pairs; {} regions, {region_pairs} pairs; {:.1?}",
        configs.len(),
        regions.len(),
        start.elapsed()
    ))
}

fn c10_soundness() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut seen = HashSet::new();
    let mut sample = Vec::new();
    while sample.len() < 100 {
        let c = random_path(&mut rng, 10);
        if seen.insert(c.canonical_key()) {
            sample.push(c);
        }
    }
    let gamma = Variation::GTwoPath;
    let mfts: Vec<u32> =
        sample.par_iter().map(|c| mft_localmap(&Config::Path(c.clone()), gamma, &lim()).unwrap().value).collect();
    let results: Vec<Result<(), String>> = sample
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let spec = build_reflection(c);
            let domain = spec.domain();
            let names: HashSet<String> = domain.iter().map(|d| d.to_string()).collect();
            for d in &domain {
                ensure(spec.in_domain(d), || format!("ref {c}: {d} listed but not in domain"))?;
                let got = simulate_reflection(&spec, d).fire_time();
                ensure(got == Some(spec.t_tilde), || format!("ref {c} on {d}: {got:?}"))?;
            }
            for other in &sample {
                let inside = spec.in_domain(other);
                ensure(inside == names.contains(&other.to_string()), || {
                    format!("ref {c}: domain listing misses {other}")
                })?;
                let out = simulate_reflection(&spec, other);
                let ok = if inside { out.fire_time() == Some(spec.t_tilde) } else { out.never_fires() };
                ensure(ok, || format!("ref {c} on {other}: {out}"))?;
            }
            let cfg = Config::Path(c.clone());
            let cc = build_cc(&cfg, gamma, &lim()).map_err(|e| e.to_string())?;
            ensure(cc.t == mfts[k], || format!("cc {c}: T {} != {}", cc.t, mfts[k]))?;
            let class: HashSet<String> = cc.class.iter().map(|d| d.to_string()).collect();
            for d in &cc.class {
                let got = simulate_cc(&cc, d).fire_time();
                ensure(got == Some(cc.t), || format!("cc {c} on {d}: {got:?}"))?;
            }
            for other in &sample {
                if class.contains(&other.to_string()) {
                    continue;
                }
                let out = simulate_cc(&cc, other);
                ensure(out.never_fires(), || format!("cc {c} fired on {other}: {out}"))?;
            }
            let horizon = mfts[k];
            for (other, &m) in sample.iter().zip(&mfts) {
                let out = simulate_lm(horizon, &Config::Path(other.clone()), gamma, &lim(), false).unwrap();
                let want = (m <= horizon).then_some(m);
                let ok = match want {
                    Some(m) => out.fire_time() == Some(m),
                    None => out.never_fires(),
                };
                ensure(ok, || format!("lm T={horizon} from {c} on {other}: {out}, want {want:?}"))?;
            }
            Ok(())
        })
        .collect();
    let errors: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    ensure(errors.is_empty(), || errors[..errors.len().min(3)].join("; "))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("100 configurations, three solution families, {:.1?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        ("line-ab exact values", c1_line_values),
        ("safeness chain", c2_chain),
        ("window formula", c3_window),
        ("interval table and greedy cover", c4_table),
        ("state-count arithmetic", c5_counts),
        ("simplified j0 formula", c6_simplified),
        ("oracle equivalence up to 8 cells", c7_oracle),
        ("interference oracle up to 9 cells", c8_interference),
        ("local-map safeness agreement up to 7 cells", c9_facts),
        ("partial-solution soundness", c10_soundness),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
