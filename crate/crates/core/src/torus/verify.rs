use rayon::prelude::*;

use super::report::{Check, VerificationReport};
use super::{
    cocycle_at_gamma1_gamma2_pow, norm_torus_module, sum_zero_mod_p, v1, v2, CounterexampleInput,
};
use crate::cohomology::{GModule, Limits};
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::modring::{
    image_submodule, invariant_factor_valuations, solve_linear, solve_linear_lifted, ModMatrix,
    ModVector, Modulus, Submodule,
};

const ASSUMPTIONS: [&str; 3] = [
    "the torus enters only through its p^2-torsion module W with the coordinate-shift action; the number field and cyclotomic characters are not modelled",
    "G_p is taken to be <γ1, γ2>, the p-Sylow subgroup of the Galois image, as a matrix group",
    "decomposition groups are represented by the cyclic subgroups of G_p",
];

/// Everything computed for one element γ1γ2^h.
struct PerH {
    h: u64,
    det: Result<i64>,
    image_is_v: bool,
    image_index: Option<u128>,
    snf_valuations: std::result::Result<Vec<Option<u32>>, String>,
    target: ModVector,
    target_in_v: bool,
    witness: Option<ModVector>,
}

fn per_h(input: &CounterexampleInput, v: &Submodule, h: u64) -> Result<PerH> {
    let p = input.p;
    let g = input.gamma1.mul(&input.gamma2.pow(h)?)?;
    let a = g.minus_identity()?;
    let image = image_submodule(&a)?;
    let snf_valuations = invariant_factor_valuations(&a.lift(), p).map_err(|e| e.to_string());
    let target = match &input.local_targets {
        Some(t) => t
            .get(h as usize)
            .cloned()
            .ok_or_else(|| Error::Dimension(format!("no local target for h = {h}")))?,
        None => cocycle_at_gamma1_gamma2_pow(input, h)?,
    };
    let witness = solve_linear(&a, &target)?.solution;
    Ok(PerH {
        h,
        det: a.det(),
        image_is_v: &image == v,
        image_index: image.index().ok(),
        snf_valuations,
        target_in_v: v.contains(&target)?,
        target,
        witness,
    })
}

/// Exactly one lifted invariant factor divisible by p, and not by p^2.
fn snf_profile_ok(vals: &[Option<u32>]) -> bool {
    vals.iter().all(|v| matches!(v, Some(0) | Some(1)))
        && vals.iter().filter(|v| **v == Some(1)).count() == 1
}

fn check_shapes(input: &CounterexampleInput) -> Result<Modulus> {
    let m = Modulus::new(input.p, 2)?;
    let r = (input.p - 1) as usize;
    for g in [&input.gamma1, &input.gamma2] {
        if g.modulus() != m || g.rows() != r || g.cols() != r {
            return Err(Error::Dimension(format!(
                "generators must be {r}x{r} over Z/{}",
                m.value()
            )));
        }
    }
    for v in [&input.v1, &input.v2] {
        if v.modulus() != m || v.len() != r {
            return Err(Error::Dimension(format!(
                "values must have length {r} over Z/{}",
                m.value()
            )));
        }
    }
    if let Some(t) = &input.local_targets {
        if t.len() != input.p as usize || t.iter().any(|v| v.modulus() != m || v.len() != r) {
            return Err(Error::Dimension("one local target per h = 0..p-1".into()));
        }
    }
    Ok(m)
}

fn geometric_sum(g: &ModMatrix, p: i64, v: &ModVector) -> Result<ModVector> {
    let mut acc = ModVector::zero(v.modulus(), v.len());
    let mut term = v.clone();
    for _ in 0..p {
        acc = acc.add(&term)?;
        term = g.mul_vec(&term)?;
    }
    Ok(acc)
}

/// Checks every ingredient of the non-vanishing of H^1_loc(G_p, (Z/p^2Z)^(p-1))
/// for the given data. Failing checks never abort; only malformed input and
/// resource exhaustion are errors.
pub fn verify_counterexample(
    input: &CounterexampleInput,
    limits: &Limits,
    jobs: usize,
) -> Result<VerificationReport> {
    let p = input.p;
    let m = check_shapes(input)?;
    let r = (p - 1) as usize;
    let order = (p as u128) * (p as u128);
    if order > limits.max_group_order as u128 {
        return Err(Error::GroupTooLarge {
            cap: limits.max_group_order,
        });
    }
    let mut report = VerificationReport::new("verify-counterexample")
        .parameter("p", p)
        .parameter("n", 2)
        .parameter("dimension", r);
    report.assumptions = ASSUMPTIONS.iter().map(|s| s.to_string()).collect();

    // Some altered inputs are themselves valid counterexamples (v1 + (p, 0, ...)
    // represents another non-zero class), so no later check can notice them.
    let w = norm_torus_module(p)?;
    let mut data = Check::new("data_matches_construction")
        .value("gamma1_is_shift_on_w", w.sigma == input.gamma1)
        .value("gamma2_is_eta_on_w", w.eta == input.gamma2)
        .value("v1_as_stated", v1(p)? == input.v1)
        .value("v2_as_stated", v2(p)? == input.v2);
    data.require(
        data.values
            .values()
            .all(|v| v == &serde_json::Value::Bool(true)),
    );
    report.push(data);

    let mut gens = Check::new("generators_invertible")
        .value("det_gamma1", input.gamma1.det()?)
        .value("det_gamma2", input.gamma2.det()?);
    gens.require(input.gamma1.is_invertible() && input.gamma2.is_invertible());
    let invertible = gens.passed;
    report.push(gens);

    // A wrong generator can produce a larger group, so enumeration stops at p^2.
    let group = if invertible {
        MatrixGroup::enumerate(
            m,
            r,
            vec![input.gamma1.clone(), input.gamma2.clone()],
            order as usize,
        )
        .ok()
    } else {
        None
    };
    let mut structure = Check::new("group_structure")
        .value(
            "gamma1_pow_p_is_identity",
            input.gamma1.pow(p as u64)?.is_identity(),
        )
        .value(
            "gamma2_pow_p_is_identity",
            input.gamma2.pow(p as u64)?.is_identity(),
        )
        .value(
            "generators_commute",
            input.gamma1.mul(&input.gamma2)? == input.gamma2.mul(&input.gamma1)?,
        );
    match &group {
        Some(g) => {
            structure.set("order", g.order());
            structure.set("elementary_abelian_rank", g.elementary_abelian_profile());
            structure
                .require(g.order() as u128 == order && g.elementary_abelian_profile() == Some(2));
        }
        None => {
            structure.set("order", format!("exceeds {order} or not a group"));
            structure.require(false);
        }
    }
    report.push(structure);

    let rel1 = geometric_sum(&input.gamma1, p, &input.v1)?;
    let rel2 = geometric_sum(&input.gamma2, p, &input.v2)?;
    let rel3 = input
        .v1
        .sub(&input.gamma2.mul_vec(&input.v1)?)?
        .add(&input.gamma1.minus_identity()?.mul_vec(&input.v2)?)?;
    for (name, value) in [
        ("relation_gamma1_norm", rel1),
        ("relation_gamma2_norm", rel2),
        ("relation_commutator", rel3),
    ] {
        let mut c = Check::new(name).value("value", &value);
        c.require(value.is_zero());
        report.push(c);
    }

    let module = group.as_ref().map(GModule::natural);
    let cocycle = match &module {
        Some(md) => match md.extend_from_generators(&[input.v1.clone(), input.v2.clone()]) {
            Ok(z) => {
                report.push(
                    Check::new("cocycle_extension")
                        .value("table_size", z.values().len())
                        .value("table_forced_by_generator_values", true),
                );
                Some(z)
            }
            Err(e) => {
                report.push(Check::failed("cocycle_extension", e));
                None
            }
        },
        None => {
            report.push(Check::failed("cocycle_extension", "group unavailable"));
            None
        }
    };

    let stacked = input
        .gamma1
        .minus_identity()?
        .vstack(&input.gamma2.minus_identity()?)?;
    let rhs = ModVector::concat(&[input.v1.clone(), input.v2.clone()], m);
    let modular = solve_linear(&stacked, &rhs)?.solution;
    let lifted = solve_linear_lifted(&stacked, &rhs)?.solution;
    let mut nc = Check::new("non_coboundary")
        .value("solvable_modular", modular.is_some())
        .value("solvable_lifted", lifted.is_some());
    if let Some(w) = &modular {
        nc.set("coboundary_witness", w);
    }
    nc.require(modular.is_none() && lifted.is_none());
    report.push(nc);

    let w2 = solve_linear(&input.gamma2.minus_identity()?, &input.v2)?.solution;
    let mut l2 = Check::new("local_gamma2").value("target", &input.v2);
    l2.set("witness", &w2);
    l2.require(w2.is_some());
    report.push(l2);

    let v = sum_zero_mod_p(p)?;
    let hs: Vec<u64> = (0..p as u64).collect();
    let compute = || {
        hs.par_iter()
            .map(|&h| per_h(input, &v, h))
            .collect::<Result<Vec<_>>>()
    };
    let rows = if jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(compute)?
    } else {
        hs.iter()
            .map(|&h| per_h(input, &v, h))
            .collect::<Result<Vec<_>>>()?
    };

    let mut local = Check::new("local_gamma1_gamma2_pow");
    let mut dets = Check::new("determinants");
    let mut images = Check::new("images_equal_v");
    for row in &rows {
        let key = format!("h={}", row.h);
        local.set(
            &key,
            serde_json::json!({
                "target": row.target,
                "target_in_v": row.target_in_v,
                "witness": row.witness,
            }),
        );
        local.require(row.witness.is_some() && row.target_in_v);
        match &row.det {
            Ok(d) => {
                dets.set(&key, d);
                dets.require(*d == p);
            }
            Err(e) => {
                dets.set(&key, e.to_string());
                dets.require(false);
            }
        }
        images.set(
            &key,
            serde_json::json!({
                "equals_v": row.image_is_v,
                "index": row.image_index.map(|i| i.to_string()),
                "lifted_snf_p_valuations": match &row.snf_valuations {
                    Ok(v) => serde_json::to_value(v).expect("valuations"),
                    Err(e) => serde_json::Value::String(e.clone()),
                },
            }),
        );
        images.require(
            row.image_is_v
                && row.image_index == Some(p as u128)
                && row
                    .snf_valuations
                    .as_ref()
                    .map(|v| snf_profile_ok(v))
                    .unwrap_or(false),
        );
    }
    report.push(local);
    report.push(dets);
    report.push(images);

    match (&module, &cocycle) {
        (Some(md), Some(z)) => {
            let h1 = md.h1(limits)?;
            let loc = md.h1_loc(limits)?;
            let order = loc.class_order(z)?;
            let locally = md.is_locally_trivial(z)?;
            let mut c = Check::new("h1loc_nontrivial")
                .value("h1_invariant_factors", h1.invariant_factors())
                .value("h1loc_invariant_factors", loc.invariant_factors())
                .value("class_order", order)
                .value("cyclic_subgroups_checked", locally.conditions.len());
            c.require(!loc.is_trivial() && order == Some(p as u64) && locally.locally_trivial);
            report.push(c);
        }
        _ => report.push(Check::failed("h1loc_nontrivial", "no cocycle to classify")),
    }
    Ok(report)
}

/// Whether a cyclic Sylow subgroup forces H^1_loc to vanish for this group,
/// with the computed H^1_loc of the Sylow subgroup either way.
pub fn theorem1a_check(group: &MatrixGroup, limits: &Limits) -> Result<VerificationReport> {
    let m = group.modulus();
    let p = m.p();
    let r = group.dim();
    let sylow = group.sylow_p(limits.max_group_order)?;
    let cyclic = sylow.cyclic_subgroups().len() <= 1;
    let applicable = cyclic && r + 1 < p as usize;
    let loc = GModule::natural(&sylow).h1_loc(limits)?;
    let mut report = VerificationReport::new("cyclic-sylow-criterion")
        .parameter("p", p)
        .parameter("n", m.n())
        .parameter("dimension", r)
        .parameter("group_order", group.order());
    report.push(
        Check::new("sylow")
            .value("order", sylow.order())
            .value("cyclic", cyclic)
            .value(
                "criterion",
                if applicable {
                    "applicable"
                } else {
                    "inapplicable"
                },
            ),
    );
    let mut c = Check::new("h1loc_sylow")
        .value("invariant_factors", loc.invariant_factors())
        .value("trivial", loc.is_trivial());
    if applicable {
        c.require(loc.is_trivial());
    }
    report.push(c);
    Ok(report)
}
