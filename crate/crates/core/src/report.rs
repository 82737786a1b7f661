//! JSON reports shared by the command line tool and the C interface.

use serde_json::{json, Value};

use crate::brauer_tree::{check_unitriangular, decomposition_matrix, to_json, Ordering, PlanarBrauerTree};
use crate::ell_arith::{eigenvalue_table, EllContext};
use crate::error::{Error, Result};
use crate::homotopy::{cohomology, euler_character, rickard_complex, TiltingReport};
use crate::oracle::StarVerification;
use crate::root_data::{group_order_poly, torus_order_poly, CoxeterDatum};
use crate::tree_algebra::TreeAlgebra;

pub fn info(d: &CoxeterDatum) -> Result<Value> {
    Ok(json!({
        "type": d.ty.to_string(),
        "rank": d.ty.rank,
        "h": d.h,
        "h0": d.h0,
        "delta": d.delta,
        "r": d.r,
        "degrees": d.degrees,
        "epsilons": d.epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "positive_roots": d.n_pos,
        "group_order": group_order_poly(d)?.to_string(),
        "torus_order": torus_order_poly(d)?.to_string(),
    }))
}

pub fn validate(ctx: &EllContext, mu: u64) -> Value {
    json!({
        "valid": true,
        "reason": Value::Null,
        "type": ctx.datum.ty.to_string(),
        "ell": ctx.ell,
        "qsq": ctx.qsq,
        "q": ctx.q.to_string(),
        "q_mod": ctx.q_mod.to_string(),
        "qdelta_mod": ctx.qdelta_mod,
        "torus_order": ctx.torus_order.to_string(),
        "multiplicity": mu,
        "precision": ctx.precision,
        "eigenvalue_table": eigenvalue_table(ctx),
    })
}

/// The report for a parameter set that fails the regime checks.
pub fn invalid(err: &Error) -> Value {
    let reason = match err {
        Error::BadRegime { reason, .. } => format!("{reason:?}"),
        other => format!("{other:?}").split(['(', ' ', '{']).next().unwrap_or("").to_string(),
    };
    json!({ "valid": false, "reason": reason, "detail": err.to_string(), "eigenvalue_table": Value::Null })
}

pub fn decmatrix(tree: &PlanarBrauerTree, ordering: &Ordering, collapsed: bool) -> Result<Value> {
    let d = decomposition_matrix(tree);
    let w = check_unitriangular(tree, &d, ordering)?;
    let (labels, rows) = if collapsed {
        let mut labels = d.row_labels[..d.n_ordinary].to_vec();
        labels.push("exc".into());
        (labels, d.collapsed())
    } else {
        (d.row_labels.clone(), d.rows.clone())
    };
    Ok(json!({
        "rows": labels,
        "columns": (0..d.n_cols()).map(|j| format!("S{j}")).collect::<Vec<_>>(),
        "matrix": rows,
        "unitriangular": { "ok": w.ok, "order": w.order, "violation": w.violation },
    }))
}

pub fn algebra(alg: &TreeAlgebra) -> Value {
    let projectives: Vec<Value> = (0..alg.n_vertices())
        .map(|e| {
            let p = alg.projective(e);
            json!({ "vertex": e, "dim": p.dim(), "layers": p.radical_layers(alg) })
        })
        .collect();
    json!({
        "ell": alg.ell,
        "dim": alg.dim(),
        "cartan": alg.hom_matrix(),
        "ext1": alg.ext1_matrix(),
        "projectives": projectives,
    })
}

pub fn rickard(alg: &TreeAlgebra, j: usize, tilting: Option<&TiltingReport>) -> Result<Value> {
    let cx = rickard_complex(alg, j)?;
    let coh: Vec<Value> =
        cohomology(alg, &cx).into_iter().map(|(deg, dims)| json!({ "degree": deg, "dims": dims })).collect();
    let terms: Vec<Value> =
        cx.terms.iter().enumerate().map(|(k, t)| json!({ "degree": cx.lo + k as i64, "projectives": t })).collect();
    let tilting = tilting.map(|t| {
        json!({
            "ok": true,
            "end_dim": t.end_dim,
            "star_dim": t.star_dim,
            "generates": t.generates,
            "hom": t.hom.iter().map(|h| json!({ "j": h.j, "j2": h.j2, "dims": h.dims })).collect::<Vec<_>>(),
        })
    });
    Ok(json!({
        "vertex": j,
        "degrees": [cx.lo, cx.hi()],
        "terms": terms,
        "euler": euler_character(&alg.tree, &cx).0,
        "cohomology": coh,
        "tilting": tilting,
    }))
}

pub fn star(tree: &PlanarBrauerTree, verification: Option<&StarVerification>) -> Value {
    let d = decomposition_matrix(tree);
    let oracle = verification.map(|v| {
        json!({ "characters": v.labels, "degrees": v.degrees, "decomposition": v.decomposition, "ext_pairs": v.ext_pairs })
    });
    json!({
        "tree": to_json(tree),
        "decomposition": d.rows,
        "oracle": oracle,
        "match": verification.is_some(),
    })
}

/// Keys sorted, two-space indentation, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
