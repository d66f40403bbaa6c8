//! Acceptance suite. Prints one line per criterion and backend, then exits
//! nonzero if any criterion failed. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dglift::dgalg::{check_identities, Algebra, Element};
use dglift::dgmod::{homology_dim, Carrier, ModuleError, SemifreeModule, Shifted};
use dglift::diagonal::Diagonal;
use dglift::exactlin::Field;
use dglift::homotopy::{
    check_ar1, check_ar2, hom_k_dim, is_null_homotopic, verify_chain_map, verify_homotopy, HomSpace,
};
use dglift::instance::{parse_instance_file, Instance, ParseOptions, DEFAULT_PRIME};
use dglift::liftcheck::{
    kernel_sequence_check, naive_lift_battery, p_ideal_dims, splitting_search, Condition,
};
use dglift::obstruction::Obstruction;

const SECOND_PRIME: u64 = 2_147_483_647;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn(Field) -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn corpus(field: Field) -> Vec<(String, Instance)> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "dg"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let opts = ParseOptions {
                field: Some(field),
                ..Default::default()
            };
            let inst =
                parse_instance_file(&p, &opts).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_stem().unwrap().to_string_lossy().into_owned(), inst)
        })
        .collect()
}

fn load(name: &str, field: Field) -> Instance {
    corpus(field)
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("missing {name}"))
        .1
}

fn primary(inst: &Instance) -> &Arc<SemifreeModule> {
    inst.primary().expect("instance defines a module").1
}

fn diagonal(inst: &Instance) -> Arc<Diagonal> {
    Arc::new(Diagonal::new(inst.algebra.clone()))
}

fn obstruction(inst: &Instance) -> Obstruction {
    Obstruction::new(primary(inst).clone(), diagonal(inst)).expect("obstruction")
}

fn ar1_instances(field: Field) -> Result<Vec<(String, Instance)>, ModuleError> {
    let mut out = Vec::new();
    for (name, inst) in corpus(field) {
        if check_ar1(primary(&inst))?.holds() {
            out.push((name, inst));
        }
    }
    Ok(out)
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng, max_deg: i64) -> Element {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let dim = alg.dim(d).unwrap();
        if dim == 0 {
            continue;
        }
        let coeffs: Vec<i64> = (0..dim)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    rng.gen_range(-5..=5)
                } else {
                    0
                }
            })
            .collect();
        return alg.element_from_coeffs(d, &coeffs).unwrap();
    }
}

fn algebra_soundness(field: Field) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut checked = 0;
    let corpus = corpus(field);
    for (name, inst) in &corpus {
        let alg = &inst.algebra;
        let mut gens: Vec<Element> = (0..alg.nvars()).map(|i| alg.var(i)).collect();
        let a = alg.base_gen();
        if !a.is_zero() {
            gens.push(a);
        }
        let randoms: Vec<Element> = (0..200)
            .map(|_| random_element(alg, &mut rng, alg.cap() / 2))
            .collect();
        let mut pairs = Vec::new();
        for x in &gens {
            for y in &gens {
                pairs.push((x.clone(), y.clone()));
            }
        }
        for (i, x) in randoms.iter().enumerate() {
            pairs.push((x.clone(), randoms[(i + 1) % randoms.len()].clone()));
            pairs.push((x.clone(), gens[i % gens.len().max(1)].clone()));
        }
        let singles: Vec<Element> = gens.iter().chain(&randoms).cloned().collect();
        let r = check_identities(alg, &singles, &pairs).map_err(e)?;
        fail_if(!r.holds(), || format!("{name}: {:?}", r.failures.first()))?;
        checked += r.checked;
    }
    Ok(format!("{} instances, {checked} identities", corpus.len()))
}

fn diagonal_exactness(field: Field) -> Outcome {
    let mut checks = 0;
    for (name, inst) in corpus(field) {
        let diag = diagonal(&inst);
        let cap = inst.algebra.cap();
        for d in 0..=cap {
            let [j, b, be] = diag.first_sequence_dims(d).map_err(e)?;
            fail_if(j + b != be, || format!("{name} d={d}: {j} + {b} != {be}"))?;
            checks += 1;
            for n in 0..inst.limits.max_tensor {
                let [left, mid, right] = diag.second_sequence_dims(n, d).map_err(e)?;
                fail_if(left + right != mid, || {
                    format!("{name} n={n} d={d}: {left} + {right} != {mid}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} dimension identities"))
}

fn appendix_counterexample(field: Field) -> Outcome {
    let inst = load("I3", field);
    let n = primary(&inst);
    let dim = hom_k_dim(n, n.as_ref(), -1).map_err(e)?;
    fail_if(dim < 1, || format!("Hom(N, Σ^-1 N) has dimension {dim}"))?;
    let f = inst.map("f").ok_or("map f missing")?;
    let images = f.images().map_err(e)?;
    let target = Shifted::new(n.as_ref(), -1);
    fail_if(!verify_chain_map(n, &target, &images).map_err(e)?, || {
        "f is not a chain map".into()
    })?;
    fail_if(images.iter().all(|v| v.is_zero()), || "f is zero".into())?;
    fail_if(is_null_homotopic(f).map_err(e)?.is_some(), || {
        "f is null-homotopic".into()
    })?;
    let h1 = homology_dim(n.as_ref(), 1).map_err(e)?;
    fail_if(h1 == 0, || "H_1(N) = 0".into())?;
    Ok(format!(
        "dim Hom(N, Σ^-1 N) = {dim}, f not null-homotopic, dim H_1(N) = {h1}"
    ))
}

fn omega_on_frees(field: Field) -> Outcome {
    for name in ["ext_B", "ext_B2", "ext_B3"] {
        let inst = load(name, field);
        let n = primary(&inst);
        let ob = obstruction(&inst);
        let chi = ob.chi().map_err(e)?;
        let w = ob
            .omega_is_zero()
            .map_err(e)?
            .ok_or_else(|| format!("{name}: ω ≠ 0"))?;
        let valid = verify_homotopy(n, &ob.tensor(1), &chi, &w.images).map_err(e)?;
        fail_if(!valid, || format!("{name}: stored witness does not verify"))?;
        let s = splitting_search(n)
            .map_err(e)?
            .ok_or_else(|| format!("{name}: no splitting"))?;
        let sigma = s.sigma.images().map_err(e)?;
        fail_if(
            !verify_chain_map(n, s.base.module.as_ref(), &sigma).map_err(e)?,
            || format!("{name}: σ not a chain map"),
        )?;
        for (l, x) in sigma.iter().enumerate() {
            let back = s.base.pi.matrix(n.degree(l)).map_err(e)?.mul_vec(x);
            fail_if(back != n.generator(l).map_err(e)?, || {
                format!("{name}: πσ ≠ id")
            })?;
        }
    }
    Ok("B, B², B³: witnesses verified, sections found".into())
}

fn split_vs_omega(field: Field) -> Outcome {
    let mut compared = Vec::new();
    let mut skipped = Vec::new();
    for (name, inst) in corpus(field) {
        let n = primary(&inst);
        if !inst.algebra.finite_over_a() {
            skipped.push(name);
            continue;
        }
        let split = splitting_search(n).map_err(e)?.is_some();
        let omega = obstruction(&inst).omega_is_zero().map_err(e)?.is_some();
        fail_if(split != omega, || {
            format!("{name}: split {split}, ω = 0 {omega}")
        })?;
        compared.push(name);
    }
    for required in ["I2", "I3", "cone_id", "ext_B", "ext_B2"] {
        fail_if(!compared.iter().any(|n| n == required), || {
            format!("{required} not compared")
        })?;
    }
    fail_if(compared.len() < 8, || {
        format!("only {} instances compared", compared.len())
    })?;
    Ok(format!(
        "{} instances agree; undecidable splitting skipped: {}",
        compared.len(),
        skipped.join(", ")
    ))
}

fn nine_conditions(field: Field) -> Outcome {
    let ar1 = ar1_instances(field).map_err(e)?;
    for required in ["ext_B", "ext_B2", "ext_B3", "idempotent_cut", "cone_id"] {
        fail_if(!ar1.iter().any(|(n, _)| n == required), || {
            format!("AR1 fails on {required}")
        })?;
    }
    let mut names = Vec::new();
    for (name, inst) in &ar1 {
        let r =
            naive_lift_battery(primary(inst), &diagonal(inst), inst.limits.lbound).map_err(e)?;
        fail_if(!r.all_decided_and_agree(), || {
            let v: Vec<String> = Condition::ALL
                .iter()
                .map(|&c| format!("{}={:?}", c.label(), r.verdict(c)))
                .collect();
            format!(
                "{name}: disagreement (potential conjecture-relevant event): {}",
                v.join(" ")
            )
        })?;
        names.push(name.as_str());
    }
    Ok(format!("AR1 instances: {}", names.join(", ")))
}

fn action_matrices(field: Field) -> Outcome {
    let mut count = 0;
    for (name, inst) in ar1_instances(field).map_err(e)? {
        let ob = obstruction(&inst);
        for k in 0..inst.limits.max_tensor {
            for m in 0..=3 {
                let a = ob.omega_action_matrix(k, m).map_err(e)?;
                fail_if(!a.surjective(), || {
                    format!("{name} n={k} m={m}: not surjective")
                })?;
                if m >= 1 || k >= 1 {
                    fail_if(!a.injective(), || {
                        format!("{name} n={k} m={m}: not injective")
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} matrices"))
}

fn gamma_structure(field: Field) -> Outcome {
    let mut vanishing = 0;
    for (name, inst) in ar1_instances(field).map_err(e)? {
        let n = primary(&inst);
        let ob = obstruction(&inst);
        fail_if(ob.gamma_dim(-1).map_err(e)? != 0, || {
            format!("{name}: Γ^-1 ≠ 0")
        })?;
        for k in 0..=inst.limits.max_tensor {
            let (rank, dim) = ob.end_generation(k).map_err(e)?;
            fail_if(
                rank != dim || dim != ob.gamma_dim(k as i64).map_err(e)?,
                || format!("{name} n={k}: rank {rank}, dim Γ {dim}"),
            )?;
        }
        if check_ar2(n).map_err(e)?.holds() {
            for k in 0..=inst.limits.max_tensor {
                for m in 1..=3 {
                    let d = ob.hom_space(k, m).map_err(e)?.dim();
                    fail_if(d != 0, || {
                        format!("{name}: Hom(N, Σ^{m} N⊗T^{k}) has dimension {d}")
                    })?;
                    vanishing += 1;
                }
            }
        }
    }
    Ok(format!(
        "{vanishing} vanishing Hom spaces under AR1 and AR2"
    ))
}

fn kernel_sequence(field: Field) -> Outcome {
    let mut names = Vec::new();
    for (name, inst) in ar1_instances(field).map_err(e)? {
        let n = primary(&inst);
        if !inst.algebra.finite_over_a() {
            let p = p_ideal_dims(n, &diagonal(&inst));
            fail_if(p.is_ok(), || {
                format!("{name}: unexpected finite base change")
            })?;
            continue;
        }
        let r = kernel_sequence_check(n, &diagonal(&inst), inst.limits.max_tensor).map_err(e)?;
        fail_if(!r.holds(), || format!("{name}: {r:?}"))?;
        names.push(name);
    }
    Ok(format!("checked on {}", names.join(", ")))
}

fn construction_cross_check(field: Field) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let corpus = corpus(field);
    for (name, inst) in &corpus {
        let ob = obstruction(inst);
        fail_if(
            ob.w_plus_via_sigma_rho().map_err(e)? != ob.chi().map_err(e)?,
            || format!("{name}: w⁺ ≠ χ"),
        )?;
        for l in 0..=inst.limits.max_tensor {
            fail_if(
                ob.chi_power(l).map_err(e)? != ob.chi_power_iterated(l).map_err(e)?,
                || format!("{name}: χ^{l} differs from the composite"),
            )?;
        }
        for trial in 0..5 {
            let r = ob
                .basis_change_check(&mut || rng.gen_range(-3..=3), 3, inst.algebra.cap() - 1)
                .map_err(e)?;
            fail_if(!r.holds(), || format!("{name} trial {trial}: {r:?}"))?;
        }
    }
    Ok(format!("{} instances, 5 basis changes each", corpus.len()))
}

fn local_nilpotency(field: Field) -> Outcome {
    let mut elements = 0;
    let mut literal = 0;
    let mut worst = 0;
    for (name, inst) in corpus(field) {
        let n = primary(&inst);
        let Some(lo) = n.min_degree() else { continue };
        let ob = obstruction(&inst);
        for i in 0..=inst.limits.max_tensor {
            let r = ob.nilpotency(i, lo..=inst.algebra.cap()).map_err(e)?;
            fail_if(!r.all_nilpotent(), || {
                format!("{name} i={i}: an element survived")
            })?;
            fail_if(r.degree_bound_violations > 0, || {
                format!(
                    "{name} i={i}: {} elements exceed m − i + 1",
                    r.degree_bound_violations
                )
            })?;
            elements += r.indices.len();
            literal += r.top_bound_violations;
            worst = worst.max(r.max_index().unwrap_or(0));
        }
    }
    Ok(format!(
        "{elements} elements nilpotent within m − i + 1 (max n_x = {worst}); {literal} exceed the top-generator-degree form"
    ))
}

/// Every dimension the engine reports for one instance.
fn profile(inst: &Instance) -> Result<Vec<(String, usize)>, ModuleError> {
    let mut out = Vec::new();
    let alg = &inst.algebra;
    let n = primary(inst);
    let diag = diagonal(inst);
    let cap = alg.cap();
    for d in 0..=cap {
        out.push((format!("B_{d}"), alg.dim(d)?));
        out.push((format!("J_{d}"), diag.ideal().dim(d)?));
    }
    for d in 0..cap {
        out.push((format!("H_{d}(N)"), homology_dim(n.as_ref(), d)?));
    }
    for s in -2..=2 {
        out.push((format!("Hom(N,Σ^{s}N)"), hom_k_dim(n, n.as_ref(), s)?));
    }
    let ob = Obstruction::new(n.clone(), diag.clone())?;
    for k in 0..=inst.limits.max_tensor {
        out.push((format!("Γ^{k}"), ob.gamma_dim(k as i64)?));
        out.push((format!("ωEnd^{k}"), ob.end_generation(k)?.0));
    }
    for k in 0..inst.limits.max_tensor {
        for m in 0..=3 {
            let a = ob.omega_action_matrix(k, m)?;
            out.push((format!("rank ω· n={k} m={m}"), a.rank));
        }
    }
    if let Some((s, d)) = check_ar1(n)?.first_failure {
        out.push((format!("AR1 failure at {s}"), d));
    }
    if let Some((s, d)) = check_ar2(n)?.first_failure {
        out.push((format!("AR2 failure at {s}"), d));
    }
    if alg.finite_over_a() {
        let p = p_ideal_dims(n, &diag)?;
        out.push(("p via factorization".into(), p.via_factorization));
        out.push(("p via kernel".into(), p.via_kernel));
        let base = dglift::dgmod::base_change(n)?;
        out.push((
            "Hom(N, N|_A⊗B)".into(),
            HomSpace::new(n, base.module.as_ref())?.dim(),
        ));
    }
    Ok(out)
}

fn backend_agreement() -> Outcome {
    let fp = Field::prime(DEFAULT_PRIME).map_err(e)?;
    let q = corpus(Field::Rational);
    let f = corpus(fp);
    let mut total = 0;
    let mut reruns = Vec::new();
    for ((name, qi), (_, fi)) in q.iter().zip(&f) {
        let pq = profile(qi).map_err(e)?;
        let pf = profile(fi).map_err(e)?;
        total += pq.len();
        if pq != pf {
            let second = load(name, Field::prime(SECOND_PRIME).map_err(e)?);
            let ps = profile(&second).map_err(e)?;
            fail_if(ps != pq, || {
                let diff = pq.iter().zip(&pf).find(|(a, b)| a != b);
                format!("{name}: mismatch under both primes, first at {diff:?}")
            })?;
            reruns.push(name.clone());
        }
    }
    let note = if reruns.is_empty() {
        String::new()
    } else {
        format!("; reran with p = {SECOND_PRIME}: {}", reruns.join(", "))
    };
    Ok(format!(
        "{total} dimensions over {} instances agree{note}",
        q.len()
    ))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let secs = start.elapsed().as_secs_f64();
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} {label} [tolerance: exact, {secs:.1}s]: {detail}");
    outcome.is_ok()
}

fn main() {
    let fp = Field::prime(DEFAULT_PRIME).expect("prime");
    let per_field: [Criterion; 11] = [
        (1, "algebra soundness", algebra_soundness),
        (2, "diagonal exactness", diagonal_exactness),
        (3, "Koszul counterexample", appendix_counterexample),
        (4, "ω vanishes on frees", omega_on_frees),
        (5, "splitting matches ω = 0", split_vs_omega),
        (6, "nine conditions agree under AR1", nine_conditions),
        (7, "ω action matrices", action_matrices),
        (8, "Γ structure", gamma_structure),
        (9, "kernel sequence", kernel_sequence),
        (
            10,
            "obstruction construction cross-check",
            construction_cross_check,
        ),
        (11, "local nilpotency", local_nilpotency),
    ];
    let mut failures = 0;
    for (id, title, check) in per_field {
        for field in [Field::Rational, fp] {
            let label = format!("criterion {id:>2} ({title}) [{}]", field.label());
            failures += !run(&label, || check(field)) as usize;
        }
    }
    failures += !run(
        "criterion 12 (backend agreement) [Q vs Fp]",
        backend_agreement,
    ) as usize;
    println!("acceptance: {} of 23 checks passed", 23 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
