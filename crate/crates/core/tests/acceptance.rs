//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::*;
use signpat::family::{block_family, Commutation, FamilyKind};
use signpat::idem::{free_choices, run_instrumented, DiagSpec, IdempotentGenerator};
use signpat::kpotent::{condition_of_kpotence, KDiagSpec, KPotentGenerator, Strategy};
use signpat::realization::{allows_kpotence, closed_form_idempotent_2x2, realize, verify_realization};
use signpat::reduction::{expand_with, red};
use signpat::{make_p, make_q, BlockType, Sign, SignMatrix};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Wall-clock budgets, generous against the stated targets.
const INSTANT: Duration = Duration::from_secs(5);
const ONE_SECOND: Duration = Duration::from_secs(1);
const ONE_MINUTE: Duration = Duration::from_secs(60);
const TWO_MINUTES: Duration = Duration::from_secs(120);

/// Search bound for the stalled prefix completions.
const STALLED_KMAX: usize = 100;

fn c1_ambiguous_square() -> Outcome {
    let a = ambiguous_square();
    let sq = a.pow(2).map_err(|e| e.to_string())?;
    ensure(sq.get(0, 3) == Sign::Amb, || format!("(1,4) of the square is {:?}", sq.get(0, 3)))?;
    ensure(sq != a, || "square equals the pattern".into())?;
    let report = a.potence_index(signpat::matrix::default_kmax(4)).map_err(|e| e.to_string())?;
    ensure(report.k != Some(1), || "reported sign idempotent".into())?;
    let cond = condition_of_kpotence(&a, &[1, 1, 1, 1], 1).map_err(|e| e.to_string())?;
    let c14 = cond.iter().find(|c| (c.i, c.j) == (0, 3)).ok_or("no (1,4) block")?;
    ensure(!c14.holds && c14.ambiguous, || format!("block (1,4) condition {c14:?}"))?;
    let diag: DiagSpec = "++0+".parse().unwrap();
    let emitted = IdempotentGenerator::new(&diag).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    ensure(!emitted.contains(&a), || "generator emitted it".into())?;
    Ok(format!("A^2(1,4) = #, not emitted among {} patterns", emitted.len()))
}

fn c2_stalled_prefix() -> Outcome {
    for s in Sign::PROPER {
        let a = stalled_prefix(s);
        let r = a.potence_index(STALLED_KMAX).map_err(|e| e.to_string())?;
        ensure(r.k.is_none(), || format!("(1,5) = {s:?} gives k = {:?}", r.k))?;
    }
    // Column 5 is built bottom-up: only (4,5) is in place when (3,5) is chosen.
    let mut partial = stalled_prefix(Sign::Zero);
    partial.set(1, 4, Sign::Zero);
    partial.set(2, 4, Sign::Zero);
    let choices = free_choices(&partial, 2, 4, &stalled_diag()).map_err(|e| e.to_string())?;
    ensure(!choices.contains(Sign::Minus), || format!("choices {:?} include -", choices.signs()))?;
    // Oracle: the values of (3,5) occurring in idempotent completions of column 5.
    let mut occurring = BTreeSet::new();
    for code in 0..27usize {
        let mut a = partial.clone();
        for (row, digit) in [(0usize, code % 3), (1, code / 3 % 3), (2, code / 9)] {
            a.set(row, 4, Sign::PROPER[digit]);
        }
        if a.pow(2).map_err(|e| e.to_string())? == a {
            occurring.insert(a.get(2, 4));
        }
    }
    let offered: BTreeSet<Sign> = choices.signs().iter().copied().collect();
    ensure(offered == occurring, || format!("choices {offered:?}, completions use {occurring:?}"))?;
    Ok(format!("no k <= {STALLED_KMAX} for 3 completions; (3,5) choices {offered:?}"))
}

fn c3_idempotent_walkthrough() -> Outcome {
    let a = idempotent_walkthrough();
    ensure(a.pow(2).unwrap() == a, || "A^2 != A".into())?;
    let diag: DiagSpec = "+0+++".parse().unwrap();
    let emitted = IdempotentGenerator::new(&diag).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    ensure(emitted.contains(&a), || "not emitted".into())?;
    // The hand-walk's forced step at (1,4).
    let mut partial = a.clone();
    partial.set(0, 3, Sign::Zero);
    partial.set(0, 4, Sign::Zero);
    for i in 1..5 {
        partial.set(i, 4, Sign::Zero);
    }
    let c = free_choices(&partial, 0, 3, &diag).map_err(|e| e.to_string())?;
    ensure(c.signs() == [Sign::Minus], || format!("(1,4) choices {:?}", c.signs()))?;
    Ok(format!("A^2 = A, emitted among {}", emitted.len()))
}

fn c4_kpotent_walkthrough() -> Outcome {
    let a = kpotent_walkthrough();
    ensure(a.pow(3).unwrap() == a, || "A^3 != A".into())?;
    let spec: KDiagSpec = "P2,0,P2,Q1".parse().unwrap();
    ensure(spec.k() == 2, || format!("k = {}", spec.k()))?;
    let mut counts = Vec::new();
    for strategy in [Strategy::SinglePass, Strategy::Filtered] {
        let emitted = KPotentGenerator::new(&spec, strategy)
            .map_err(|e| e.to_string())?
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ensure(emitted.contains(&a), || format!("{strategy:?} does not emit it"))?;
        counts.push(emitted.len());
    }
    let conds = condition_of_kpotence(&a, &[2, 1, 2, 1], 2).map_err(|e| e.to_string())?;
    ensure(conds.iter().all(|c| c.holds), || "a block fails the k-potence condition".into())?;
    Ok(format!("A^3 = A, emitted by both strategies ({} / {} patterns)", counts[0], counts[1]))
}

fn c5_cyclic_indices() -> Outcome {
    for n in 1..=8 {
        let p = make_p(n).potence_index(4 * n).unwrap().k;
        let q = make_q(n).potence_index(4 * n).unwrap().k;
        ensure(p == Some(n) && q == Some(2 * n), || format!("n = {n}: P -> {p:?}, Q -> {q:?}"))?;
    }
    Ok("P_n -> n, Q_n -> 2n for n = 1..8".into())
}

fn all_diags() -> Vec<DiagSpec> {
    (1..=5).flat_map(DiagSpec::all).collect()
}

fn c6_idempotent_completeness() -> Outcome {
    let diags = all_diags();
    ensure(diags.len() == 62, || format!("{} diagonals", diags.len()))?;
    let total: usize = diags
        .par_iter()
        .map(|d| {
            let got = IdempotentGenerator::new(d).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            let got_keys = keys(&got);
            ensure(got_keys.len() == got.len(), || format!("{d}: duplicates"))?;
            let want = idempotent_oracle(d);
            ensure(got_keys == want, || format!("{d}: generator {} vs oracle {}", got_keys.len(), want.len()))?;
            Ok(got.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("62 diagonals, {total} patterns, sets equal"))
}

fn single_run_specs() -> Vec<KDiagSpec> {
    block_specs(4, &tags("0,P1,P2,Q1,Q2")).into_iter().filter(|s| s.zero_runs() <= 1).collect()
}

fn c7_single_pass() -> Outcome {
    let mut branches = 0usize;
    for d in all_diags() {
        let run = run_instrumented(&d).map_err(|e| e.to_string())?;
        ensure(run.stats.all_single_assignment() && run.stats.dead_ends == 0, || format!("{d}: revisited cells"))?;
        ensure(run.stats.assignment_counts.len() == run.matrices.len(), || format!("{d}: counts missing"))?;
        branches += run.matrices.len();
    }
    let specs = single_run_specs();
    let kbranches: usize = specs
        .par_iter()
        .map(|s| {
            let mut g = KPotentGenerator::instrumented(s, Strategy::SinglePass).map_err(|e| e.to_string())?;
            let n = g.by_ref().collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?.len();
            let st = g.stats();
            ensure(st.all_single_assignment(), || format!("{s}: a cell was assigned twice"))?;
            ensure(st.dead_ends == 0 && st.rejected == 0, || format!("{s}: {} dead ends, {} rejected", st.dead_ends, st.rejected))?;
            Ok(n)
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{branches} idempotent and {kbranches} k-potent branches over {} specs, each cell once", specs.len()))
}

/// Counts blocks commuting with the pair and checks each against the family.
fn family_agrees(ti: BlockType, tj: BlockType) -> Result<usize, String> {
    let (a, c) = (ti.pattern(), tj.pattern());
    let (rows, cols) = (ti.size(), tj.size());
    let family = block_family(ti, tj, false);
    for member in family.members() {
        ensure(Commutation::new(&a, &c).holds(&member).unwrap(), || format!("{ti}/{tj}: member {member:?} does not commute"))?;
    }
    let cells = rows * cols;
    // Split on the first row so workers own disjoint ranges.
    let head = 3usize.pow(cols as u32);
    let commuting: usize = (0..head)
        .into_par_iter()
        .map(|first| {
            let check = Commutation::new(&a, &c);
            let mut b = SignMatrix::zeros_rect(rows, cols);
            let mut code = first;
            for j in 0..cols {
                b.set(0, j, Sign::PROPER[code % 3]);
                code /= 3;
            }
            let mut digits = vec![0usize; cells - cols];
            let mut hits = 0usize;
            loop {
                if check.holds(&b).unwrap() {
                    ensure(family.contains(&b), || format!("{ti}/{tj}: commuting {b:?} outside the family"))?;
                    hits += 1;
                }
                // Odometer over rows 2..: one set per step on average.
                let mut carried = true;
                for (x, d) in digits.iter_mut().enumerate() {
                    *d = (*d + 1) % 3;
                    b.set(1 + x / cols, x % cols, Sign::PROPER[*d]);
                    if *d != 0 {
                        carried = false;
                        break;
                    }
                }
                if carried {
                    return Ok(hits);
                }
            }
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    ensure(commuting == family.member_count(), || format!("{ti}/{tj}: {commuting} commuting blocks, family has {}", family.member_count()))?;
    Ok(commuting)
}

fn c8_commutation_tables() -> Outcome {
    let tags: Vec<BlockType> = (1..=4).flat_map(|m| [BlockType::P(m), BlockType::Q(m)]).collect();
    let mut zero_forced = [0usize; 3];
    for &ti in &tags {
        for &tj in &tags {
            family_agrees(ti, tj)?;
            if block_family(ti, tj, false).kind == FamilyKind::ZeroForced {
                match (ti, tj) {
                    (BlockType::P(_), BlockType::Q(_)) => zero_forced[0] += 1,
                    (BlockType::Q(_), BlockType::P(_)) => zero_forced[1] += 1,
                    _ => zero_forced[2] += 1,
                }
            }
        }
    }
    ensure(zero_forced.iter().all(|&z| z > 0), || format!("zero-forced cases {zero_forced:?}"))?;
    Ok(format!("64 tag pairs agree; zero-forced P/Q {}, Q/P {}, Q/Q {}", zero_forced[0], zero_forced[1], zero_forced[2]))
}

fn short_and_long_specs() -> Vec<KDiagSpec> {
    let mut specs = block_specs(3, &tags("0,P1,P2,Q1,Q2"));
    specs.extend(LONG_SPECS.iter().map(|s| s.parse::<KDiagSpec>().unwrap()));
    specs
}

/// Every distinct pattern emitted by either k-potent strategy.
fn kpotent_fixtures() -> Vec<SignMatrix> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for spec in short_and_long_specs() {
        for strategy in [Strategy::SinglePass, Strategy::Filtered] {
            let Ok(g) = KPotentGenerator::new(&spec, strategy) else { continue };
            for a in g {
                let a = a.unwrap();
                if seen.insert(key(&a)) {
                    out.push(a);
                }
            }
        }
    }
    out
}

fn idempotent_fixtures() -> Vec<SignMatrix> {
    all_diags().iter().flat_map(IdempotentGenerator::new).map(Result::unwrap).collect()
}

fn c9_allow_and_realize() -> Outcome {
    let mut fixtures = idempotent_fixtures();
    fixtures.extend(kpotent_fixtures());
    let tallies = fixtures
        .par_iter()
        .map(|a| {
            let decision = allows_kpotence(a).map_err(|e| format!("{a:?}: {e}"))?;
            if decision.allows {
                let r = realize(a).map_err(|e| format!("{a:?}: {e}"))?;
                let ok = verify_realization(&r.b, a, r.k).map_err(|e| e.to_string())?;
                ensure(ok && r.k == decision.k, || format!("{a:?}: realization fails verification"))?;
                Ok((1, 0))
            } else {
                ensure(!decision.violations.is_empty(), || format!("{a:?}: refused without a violation"))?;
                ensure(realize(a).is_err(), || format!("{a:?}: refused but realized"))?;
                Ok((0, 1))
            }
        })
        .collect::<Result<Vec<(usize, usize)>, String>>()?;
    let (ppo, non) = tallies.iter().fold((0, 0), |(p, n), (a, b)| (p + a, n + b));
    // Independent refutation for 2x2 idempotents.
    let mut two = 0;
    for d in DiagSpec::all(2) {
        for a in IdempotentGenerator::new(&d) {
            let a = a.unwrap();
            let closed = closed_form_idempotent_2x2(&a).map_err(|e| e.to_string())?;
            ensure(closed == allows_kpotence(&a).unwrap().allows, || format!("{a:?}: closed form disagrees"))?;
            two += 1;
        }
    }
    let h = m("+- 0+");
    ensure(!allows_kpotence(&h).unwrap().allows && !closed_form_idempotent_2x2(&h).unwrap(), || "[[+,-],[0,+]] allowed".into())?;
    Ok(format!("{ppo} PPO patterns realized exactly, {non} refused, {two} 2x2 cases match the closed form"))
}

fn random_reduced(rng: &mut ChaCha8Rng) -> (SignMatrix, Vec<usize>) {
    let r = rng.gen_range(1..=4);
    let density = rng.gen_range(0.2..0.9);
    let entries = SignMatrix::from_fn(r, r, |_, _| {
        if rng.gen_bool(density) {
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        } else {
            Sign::Zero
        }
    });
    let sizes = (0..r).map(|_| rng.gen_range(1..=3)).collect();
    (entries, sizes)
}

/// Random block patterns checked for the reduction identity.
const REDUCTION_SAMPLES: usize = 1000;
const REDUCTION_SEED: u64 = 0x5eed_0010;

fn c10_reduction_commutes_with_powers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED);
    let mut checked = 0;
    let mut drawn = 0;
    while checked < REDUCTION_SAMPLES {
        drawn += 1;
        ensure(drawn < 100 * REDUCTION_SAMPLES, || "too few samples with proper powers".into())?;
        let (entries, sizes) = random_reduced(&mut rng);
        let a = expand_with(&entries, &sizes).unwrap();
        let k = rng.gen_range(1..=4);
        let ak = a.pow(k).unwrap();
        if !ak.is_proper() {
            continue;
        }
        let ra = red(&a).unwrap().entries;
        let lhs = red(&ak).unwrap().entries;
        let rhs = red(&ra.pow(k).unwrap()).unwrap().entries;
        ensure(lhs == rhs, || format!("{a:?}, k = {k}: red(A^k) = {lhs:?}, red(red(A)^k) = {rhs:?}"))?;
        checked += 1;
    }
    let fixtures: Vec<SignMatrix> = idempotent_fixtures().into_iter().chain(kpotent_fixtures()).collect();
    for a in &fixtures {
        let k = a.potence_index(signpat::matrix::default_kmax(a.rows())).unwrap().k.ok_or("fixture without index")?;
        let ra = red(a).unwrap().entries;
        ensure(ra.pow(k + 1).unwrap() == ra, || format!("{a:?}: red(A)^(k+1) != red(A)"))?;
    }
    Ok(format!("{checked} random patterns ({drawn} drawn), {} fixtures", fixtures.len()))
}

const EXPANSION_SEED: u64 = 0x5eed_0011;

fn c11_reduction_preserves_allow() -> Outcome {
    let fixtures: Vec<SignMatrix> = idempotent_fixtures().into_iter().chain(kpotent_fixtures()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(EXPANSION_SEED);
    let sized: Vec<(SignMatrix, Vec<usize>)> = fixtures
        .into_iter()
        .map(|a| {
            let sizes = (0..a.rows()).map(|_| rng.gen_range(1..=3)).collect();
            (a, sizes)
        })
        .collect();
    let count = sized
        .par_iter()
        .map(|(a, sizes)| {
            let big = expand_with(a, sizes).unwrap();
            let on_big = allows_kpotence(&big).map_err(|e| format!("{big:?}: {e}"))?.allows;
            let on_red = allows_kpotence(&red(&big).unwrap().entries).map_err(|e| e.to_string())?.allows;
            let on_a = allows_kpotence(a).unwrap().allows;
            ensure(on_big == on_red && on_red == on_a, || format!("{a:?} expanded by {sizes:?}: {on_big} / {on_red} / {on_a}"))?;
            Ok(())
        })
        .collect::<Result<Vec<()>, String>>()?
        .len();
    Ok(format!("{count} expanded fixtures agree with their reductions"))
}

fn main() {
    let criteria: [(u8, &str, Duration, fn() -> Outcome); 11] = [
        (1, "ambiguous-square counterexample is not sign idempotent", INSTANT, c1_ambiguous_square),
        (2, "stalled prefix has no index and (3,5) excludes -", INSTANT, c2_stalled_prefix),
        (3, "idempotent walkthrough is idempotent and generated", ONE_SECOND, c3_idempotent_walkthrough),
        (4, "k-potent walkthrough satisfies A^3 = A and is generated", ONE_SECOND, c4_kpotent_walkthrough),
        (5, "P_n and Q_n have indices n and 2n", INSTANT, c5_cyclic_indices),
        (6, "idempotent generator equals exhaustive enumeration", ONE_MINUTE, c6_idempotent_completeness),
        (7, "single-pass constructions assign each cell once", ONE_MINUTE, c7_single_pass),
        (8, "block families equal commuting blocks for m, n <= 4", ONE_MINUTE, c8_commutation_tables),
        (9, "allow decision and exact realizations", TWO_MINUTES, c9_allow_and_realize),
        (10, "reduction commutes with powers", ONE_MINUTE, c10_reduction_commutes_with_powers),
        (11, "allowing k-potence is invariant under reduction", ONE_MINUTE, c11_reduction_preserves_allow),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {title} [{detail}] ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {title} [{why}] ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
