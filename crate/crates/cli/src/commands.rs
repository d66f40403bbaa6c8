use std::sync::Arc;

use serde_json::{json, Value};

use crate::report::{err, module_element, tensor_element, Report};
use dglift::dgalg::check_identities_on_basis;
use dglift::dgmod::{SemifreeModule, Shifted};
use dglift::diagonal::Diagonal;
use dglift::homotopy::{check_ar1, check_ar2, is_null_homotopic, Ar1Report, Ar2Report, HomSpace};
use dglift::instance::Instance;
use dglift::liftcheck::{appendix_battery, naive_lift_battery, Verdict};
use dglift::obstruction::Obstruction;

fn module<'a>(
    inst: &'a Instance,
    name: Option<&str>,
) -> Result<(String, &'a Arc<SemifreeModule>), String> {
    match name {
        Some(n) => inst
            .module(n)
            .map(|m| (n.to_string(), m))
            .ok_or_else(|| format!("no module named `{n}`")),
        None => inst
            .primary()
            .map(|(n, m)| (n.to_string(), m))
            .ok_or_else(|| "the instance declares no module".to_string()),
    }
}

fn base_report(command: &str, inst: &Instance) -> Report {
    let mut r = Report::new(command, inst.field.label());
    r.set(
        "limits",
        json!({
            "max_degree": inst.limits.max_degree,
            "max_tensor": inst.limits.max_tensor,
            "lbound": inst.limits.lbound,
        }),
    );
    r
}

fn ar1_json(a: &Ar1Report) -> Value {
    json!({
        "holds": a.holds(),
        "degrees_nonnegative": a.degrees_nonnegative,
        "perfectness": format!("{:?}", a.perfectness),
        "bound": a.bound,
        "first_failure": a.first_failure.map(|(s, d)| json!({"shift": s, "dim": d})),
    })
}

fn ar2_json(a: &Ar2Report) -> Value {
    json!({
        "holds": a.holds(),
        "bound": a.bound,
        "first_failure": a.first_failure.map(|(s, d)| json!({"shift": s, "dim": d})),
    })
}

fn ar1_text(a: &Ar1Report) -> String {
    match a.first_failure {
        Some((s, d)) => format!("fails: Hom(N, Σ^{s} B) has dimension {d}"),
        None if !a.degrees_nonnegative => "fails: negative basis degree".into(),
        None => format!(
            "holds through shift {} (perfectness {:?})",
            a.bound, a.perfectness
        ),
    }
}

pub fn check(inst: &Instance) -> Result<Report, String> {
    let mut r = base_report("check", inst);
    let ids = check_identities_on_basis(&inst.algebra).map_err(|e| e.to_string())?;
    r.set(
        "algebra",
        json!({"identities_checked": ids.checked, "identities_hold": ids.holds()}),
    );
    r.require(
        &format!("algebra axioms on {} basis identities", ids.checked),
        ids.holds(),
    );
    let mut mods = Vec::new();
    for (name, m) in &inst.modules {
        let ar1 = check_ar1(m).map_err(err)?;
        let ar2 = check_ar2(m).map_err(err)?;
        r.line(format!(
            "module {name}: rank {}, degrees {:?}",
            m.rank(),
            m.degrees()
        ));
        r.line(format!("  AR1 {}", ar1_text(&ar1)));
        r.line(format!(
            "  AR2 {}",
            if ar2.holds() { "holds" } else { "fails" }
        ));
        mods.push(json!({
            "name": name,
            "rank": m.rank(),
            "degrees": m.degrees(),
            "ar1": ar1_json(&ar1),
            "ar2": ar2_json(&ar2),
        }));
    }
    r.set("modules", mods);
    let maps: Vec<Value> = inst
        .maps
        .iter()
        .map(|(n, f)| json!({"name": n, "shift": f.shift(), "null_homotopic": is_null_homotopic(f).ok().map(|w| w.is_some())}))
        .collect();
    r.set("maps", maps);
    Ok(r)
}

pub fn hom(
    inst: &Instance,
    source: Option<&str>,
    target: Option<&str>,
    shift: i64,
) -> Result<Report, String> {
    let mut r = base_report("hom", inst);
    let (sname, n) = module(inst, source)?;
    let (tname, m) = module(inst, target.or(Some(&sname)))?;
    let space = HomSpace::new(n, &Shifted::new(m.as_ref(), shift)).map_err(err)?;
    let mut classes = Vec::new();
    for rep in space.class_representatives() {
        let images = space
            .split(rep)
            .iter()
            .enumerate()
            .map(|(l, v)| {
                Ok(format!(
                    "{} ↦ {}",
                    n.name(l),
                    module_element(m, n.degree(l) - shift, v)?
                ))
            })
            .collect::<Result<Vec<_>, dglift::dgmod::ModuleError>>()
            .map_err(err)?;
        classes.push(images.join(", "));
    }
    r.line(format!(
        "Hom_K({sname}, Σ^{shift} {tname}): dimension {}",
        space.dim()
    ));
    r.line(format!(
        "  cycles {}, boundaries {}",
        space.cycle_dim(),
        space.boundary_dim()
    ));
    for c in &classes {
        r.line(format!("  class: {c}"));
    }
    let mut maps = Vec::new();
    for (name, f) in &inst.maps {
        if Arc::ptr_eq(f.source(), n) && Arc::ptr_eq(f.target(), m) && f.shift() == shift {
            let w = is_null_homotopic(f).map_err(err)?;
            let coords = space.class_coords(&space.assemble(&f.images().map_err(err)?));
            let coords: Option<Vec<String>> =
                coords.map(|c| c.iter().map(|(i, x)| format!("{i}:{x}")).collect());
            r.line(format!(
                "  map {name}: {}",
                if w.is_some() {
                    "null-homotopic"
                } else {
                    "not null-homotopic"
                }
            ));
            maps.push(
                json!({"name": name, "null_homotopic": w.is_some(), "class_coordinates": coords}),
            );
        }
    }
    r.set(
        "hom",
        json!({
            "source": sname,
            "target": tname,
            "shift": shift,
            "dim": space.dim(),
            "cycle_dim": space.cycle_dim(),
            "boundary_dim": space.boundary_dim(),
            "classes": classes,
            "maps": maps,
        }),
    );
    Ok(r)
}

fn obstruction(inst: &Instance, name: Option<&str>) -> Result<(String, Obstruction), String> {
    let (mname, n) = module(inst, name)?;
    let diag = Arc::new(Diagonal::new(inst.algebra.clone()));
    Ok((mname, Obstruction::new(n.clone(), diag).map_err(err)?))
}

pub fn omega(inst: &Instance, name: Option<&str>) -> Result<Report, String> {
    let mut r = base_report("omega", inst);
    let (mname, ob) = obstruction(inst, name)?;
    let n = ob.module().clone();
    let chi = ob.chi().map_err(err)?;
    let chi_text = chi
        .iter()
        .enumerate()
        .map(|(l, v)| {
            Ok(format!(
                "{} ↦ {}",
                n.name(l),
                tensor_element(&ob, 1, n.degree(l), v)?
            ))
        })
        .collect::<Result<Vec<_>, dglift::dgmod::ModuleError>>()
        .map_err(err)?;
    let witness = ob.omega_is_zero().map_err(err)?;
    r.line(format!("module {mname}"));
    for c in &chi_text {
        r.line(format!("  χ: {c}"));
    }
    match &witness {
        Some(_) => r.line("  ω = 0, witness stored"),
        None => r.line("  ω ≠ 0"),
    }
    let witness_text = match &witness {
        Some(w) => Some(
            w.images
                .iter()
                .enumerate()
                .map(|(l, v)| {
                    Ok(format!(
                        "{} ↦ {}",
                        n.name(l),
                        tensor_element(&ob, 1, n.degree(l) + 1, v)?
                    ))
                })
                .collect::<Result<Vec<_>, dglift::dgmod::ModuleError>>()
                .map_err(err)?,
        ),
        None => None,
    };

    let top = n.max_degree().unwrap_or(0);
    let lo = n.min_degree().unwrap_or(0);
    let hi = (top + 2 * inst.limits.max_tensor as i64).min(inst.limits.max_degree);
    let mut chain = true;
    for k in 0..inst.limits.max_tensor {
        for d in lo..=hi {
            chain &= ob.w_is_chain_map(k, d).map_err(err)?;
        }
    }
    let plus = ob.w_plus_via_sigma_rho().map_err(err)? == chi;
    let mut powers = true;
    for l in 0..=inst.limits.lbound.min(inst.limits.max_tensor) {
        powers &= ob.chi_power(l).map_err(err)? == ob.chi_power_iterated(l).map_err(err)?;
    }
    r.require("𝘄 commutes with the differentials", chain);
    r.require("splitting recipe reproduces χ entrywise", plus);
    r.require("closed-form χ^ℓ equals the iterated composite", powers);
    r.set(
        "omega",
        json!({
            "module": mname,
            "zero": witness.is_some(),
            "chi": chi_text,
            "witness": witness_text,
            "w_chain_map": chain,
            "w_plus_agrees": plus,
            "chi_powers_agree": powers,
        }),
    );
    Ok(r)
}

pub fn battery(inst: &Instance, name: Option<&str>) -> Result<Report, String> {
    let mut r = base_report("battery", inst);
    let (mname, n) = module(inst, name)?;
    let diag = Arc::new(Diagonal::new(inst.algebra.clone()));
    let rep = naive_lift_battery(n, &diag, inst.limits.lbound).map_err(err)?;
    r.line(format!("module {mname}"));
    r.line(format!("  AR1 {}", ar1_text(&rep.ar1)));
    let mut verdicts = serde_json::Map::new();
    for (c, v) in &rep.verdicts {
        let (short, text) = match v {
            Verdict::Holds => ("holds".to_string(), "holds".to_string()),
            Verdict::Fails => ("fails".to_string(), "fails".to_string()),
            Verdict::Undecided(why) => ("undecided".to_string(), format!("undecided ({why})")),
        };
        r.line(format!("  ({}) {:?}: {text}", c.label(), c));
        verdicts.insert(c.label().into(), short.into());
    }
    r.line(format!(
        "  Γ^n dims for n = 0..={}: {:?}",
        rep.lbound, rep.gamma_dims
    ));
    r.require("splitting and ω = 0 agree", rep.split_matches_omega());
    if rep.ar1.holds() {
        r.require("all decided conditions agree under AR1", rep.agreement());
    }
    if let Some(w) = &rep.summand {
        r.require(
            &format!("summand of B^{} with rechecked homotopy", w.m),
            w.recheck().map_err(err)?,
        );
    }
    r.set(
        "battery",
        json!({
            "module": mname,
            "ar1": ar1_json(&rep.ar1),
            "lbound": rep.lbound,
            "verdicts": verdicts,
            "gamma_dims": rep.gamma_dims,
            "nilpotency_order": rep.nilpotency_order,
            "summand_rank": rep.summand.as_ref().map(|w| w.m),
            "agreement": rep.agreement(),
            "split_matches_omega": rep.split_matches_omega(),
        }),
    );
    Ok(r)
}

pub fn gamma(inst: &Instance, name: Option<&str>, max_shift: i64) -> Result<Report, String> {
    let mut r = base_report("gamma", inst);
    let (mname, ob) = obstruction(inst, name)?;
    let n = ob.module().clone();
    let l = inst.limits.lbound;
    let ar1 = check_ar1(&n).map_err(err)?.holds();
    let ar2 = check_ar2(&n).map_err(err)?.holds();
    let dims = (-1..=l as i64)
        .map(|k| ob.gamma_dim(k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    r.line(format!("module {mname}: AR1 {}, AR2 {}", ar1, ar2));
    r.line(format!("  dim Γ^n for n = -1..={l}: {dims:?}"));
    let mut actions = Vec::new();
    for k in 0..l {
        for m in 0..=max_shift {
            let a = ob.omega_action_matrix(k, m).map_err(err)?;
            let inj_expected = m >= 1 || k >= 1;
            r.line(format!(
                "  ω·: Hom(N, Σ^{m} N⊗T^{k}) [{}] → Hom(N, Σ^{m} N⊗T^{}) [{}], rank {}",
                a.source_dim,
                k + 1,
                a.target_dim,
                a.rank
            ));
            if ar1 {
                r.require(&format!("n={k} m={m} surjective"), a.surjective());
                if inj_expected {
                    r.require(&format!("n={k} m={m} injective"), a.injective());
                }
            }
            actions.push(json!({
                "n": k,
                "m": m,
                "source_dim": a.source_dim,
                "target_dim": a.target_dim,
                "rank": a.rank,
                "surjective": a.surjective(),
                "injective": a.injective(),
            }));
        }
    }
    if ar1 && ar2 {
        for k in 0..=l {
            for m in 1..=max_shift {
                let d = ob.hom_space(k, m).map_err(err)?.dim();
                r.require(&format!("Hom(N, Σ^{m} N⊗T^{k}) = 0"), d == 0);
            }
        }
    }
    r.set(
        "gamma",
        json!({
            "module": mname,
            "ar1": ar1,
            "ar2": ar2,
            "dims_from_minus_one": dims,
            "actions": actions,
        }),
    );
    Ok(r)
}

pub fn appendix(corpus: &[(String, Instance)], max_shift: i64) -> Result<Report, String> {
    let field = corpus
        .first()
        .map(|(_, i)| i.field.label())
        .unwrap_or_default();
    let mut r = Report::new("appendix", field);
    let entries = appendix_battery(corpus, max_shift).map_err(err)?;
    let mut out = Vec::new();
    for e in &entries {
        let kind = if e.resolution_like() {
            "resolution"
        } else if e.is_counterexample() {
            "counterexample"
        } else {
            "other"
        };
        r.line(format!(
            "{}: {kind}; Hom(N, Σ^ℓ N) for ℓ<0: {:?}; Hom(N, Σ^i B) for i<0: {:?}",
            e.name, e.self_shifts, e.base_shifts
        ));
        if e.resolution_like() {
            r.require(
                &format!("{}: negative shifts vanish", e.name),
                e.vanishing_holds(),
            );
        }
        for (m, l, nonzero) in &e.explicit_classes {
            r.line(format!(
                "  map {m} (shift {l}): {}",
                if *nonzero {
                    "not null-homotopic"
                } else {
                    "null-homotopic"
                }
            ));
        }
        out.push(json!({
            "name": e.name,
            "kind": kind,
            "positive_homology": e.positive_homology,
            "homology_checked_to": e.homology_checked_to,
            "self_shifts": e.self_shifts,
            "base_shifts": e.base_shifts,
            "explicit_classes": e.explicit_classes,
        }));
    }
    r.set("entries", out);
    Ok(r)
}
