//! JSON reports. Objects serialize with sorted keys, so output is stable
//! across runs.

use leavitt_core::classify::{ClassificationReport, GradedObstruction, RingFlags, UnitalMatch};
use leavitt_core::graph::{PisFailure, PisReport};
use leavitt_core::homology::SequenceEnds;
use leavitt_core::invariants::{
    bf, bf_dual, bf_twisted, bf_twisted_dual, bfolbf_criterion, det_bf, det_bf_twisted, jh_vanishes, BfData,
    Coefficients, TwistedBfData,
};
use leavitt_core::lifting::{verify, verify_sigma, ChainMapCertificate, SigmaChainMapCertificate};
use leavitt_core::{GroupHom, Graph, IntMatrix, SigmaMatrix, SigmaScalar};
use serde_json::{json, Value};

use crate::format::{group_to_json, matrix_to_json, vector_to_json};

pub fn bf_json(d: &BfData) -> Value {
    let mut v = group_to_json(&d.group);
    v["unit_class"] = vector_to_json(&d.unit_class);
    v
}

pub fn twisted_json(d: &TwistedBfData) -> Value {
    let mut v = group_to_json(d.module.underlying());
    v["unit_class"] = vector_to_json(&d.unit_class);
    v["sigma"] = matrix_to_json(d.module.sigma_action().matrix());
    v
}

pub fn scalar_json(s: &SigmaScalar) -> Value {
    json!({"a": s.a.to_string(), "b": s.b.to_string(), "text": s.to_string()})
}

pub fn pis_json(r: &PisReport) -> Value {
    let failure = r.failure.as_ref().map(|f| match f {
        PisFailure::CycleWithoutExit(c) => json!({"kind": "cycle_without_exit", "cycle": c, "text": f.to_string()}),
        PisFailure::NotCofinal { from, target } => {
            json!({"kind": "not_cofinal", "from": from, "target": target, "text": f.to_string()})
        }
        PisFailure::NoCycle => json!({"kind": "no_cycle", "text": f.to_string()}),
    });
    json!({"purely_infinite_simple": r.purely_infinite_simple, "failure": failure})
}

/// `{graph_id, bf, bf_twisted, dets, flags}`.
pub fn invariant_report(graph_id: &str, g: &Graph) -> Value {
    let classes = g.classify_vertices();
    let names = |ix: &[usize]| ix.iter().map(|&i| g.vertices()[i].clone()).collect::<Vec<_>>();
    let dets = if g.is_regular() {
        let c = bfolbf_criterion(g).expect("regular");
        json!({
            "det_bf": det_bf(g).expect("regular").to_string(),
            "det_bf_twisted": scalar_json(&det_bf_twisted(g).expect("regular")),
            "det_i_plus_a": c.det_plus.to_string(),
            "det_i_minus_a": c.det_minus.to_string(),
            "criterion_holds": c.holds,
        })
    } else {
        Value::Null
    };
    let (jz, jzs) = (jh_vanishes(g, Coefficients::Z), jh_vanishes(g, Coefficients::ZSigma));
    json!({
        "graph_id": graph_id,
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "sinks": names(&classes.sinks),
        "sources": names(&classes.sources),
        "bf": bf_json(&bf(g)),
        "bf_dual": bf_json(&bf_dual(g)),
        "bf_twisted": twisted_json(&bf_twisted(g)),
        "bf_twisted_dual": twisted_json(&bf_twisted_dual(g)),
        "dets": dets,
        "flags": {
            "pis": pis_json(&g.purely_infinite_simple_report()),
            "regular": g.is_regular(),
            "essential": g.is_essential(),
            "jh_vanishes": {
                "z": {"plain": jz.0, "twisted": jz.1},
                "zsigma": {"plain": jzs.0, "twisted": jzs.1},
            },
        },
    })
}

pub fn sequence_json(s: &SequenceEnds) -> Value {
    json!({
        "left": group_to_json(&s.left),
        "right": group_to_json(&s.right),
        "middle": s.middle.as_ref().map(group_to_json),
        "split_reason": s.split_reason.to_string(),
    })
}

fn hom_json(h: &GroupHom) -> Value {
    json!({
        "domain": group_to_json(h.domain()),
        "codomain": group_to_json(h.codomain()),
        "matrix": matrix_to_json(h.matrix()),
    })
}

fn labelled(m: &IntMatrix, rows: &[String], cols: &[String]) -> IntMatrix {
    m.clone().with_labels(Some(rows.to_vec()), Some(cols.to_vec()))
}

fn regular_ids(g: &Graph) -> Vec<String> {
    g.regular_vertices().into_iter().map(|v| g.vertices()[v].clone()).collect()
}

/// Certificate between the BF matrices of `e` and `f`, with vertex labels
/// restored; `verified` reflects a fresh re-check.
pub fn certificate_json(c: &ChainMapCertificate, e: &Graph, f: &Graph) -> Value {
    let (ve, vf) = (e.vertices(), f.vertices());
    let (re, rf) = (regular_ids(e), regular_ids(f));
    let kernel_labels = |n: usize, p: &str| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    json!({
        "mat_a": matrix_to_json(&labelled(&c.mat_a, ve, &re)),
        "mat_m": matrix_to_json(&labelled(&c.mat_m, vf, &rf)),
        "f0": matrix_to_json(&labelled(&c.f0, vf, ve)),
        "f1": matrix_to_json(&labelled(&c.f1, &rf, &re)),
        "xi0": hom_json(&c.xi0),
        "xi1": hom_json(&c.xi1),
        "kernel_a": matrix_to_json(&labelled(&c.kernel_a, &re, &kernel_labels(c.kernel_a.cols(), "k"))),
        "kernel_m": matrix_to_json(&labelled(&c.kernel_m, &rf, &kernel_labels(c.kernel_m.cols(), "k"))),
        "verified": verify(c).is_ok(),
    })
}

fn sigma_matrix_json(m: &SigmaMatrix, rows: &[String], cols: &[String]) -> Value {
    json!({"p": matrix_to_json(&labelled(m.p(), rows, cols)), "q": matrix_to_json(&labelled(m.q(), rows, cols))})
}

pub fn sigma_certificate_json(c: &SigmaChainMapCertificate, e: &Graph, f: &Graph) -> Value {
    let (ve, vf) = (e.vertices(), f.vertices());
    let (re, rf) = (regular_ids(e), regular_ids(f));
    json!({
        "mat_a": sigma_matrix_json(&c.mat_a, ve, &re),
        "mat_m": sigma_matrix_json(&c.mat_m, vf, &rf),
        "f0": sigma_matrix_json(&c.f0, vf, ve),
        "f1": sigma_matrix_json(&c.f1, &rf, &re),
        "xi0": hom_json(&c.xi0),
        "verified": verify_sigma(c).is_ok(),
    })
}

pub fn classification_json(r: &ClassificationReport, e: &Graph, f: &Graph, flags: &RingFlags) -> Value {
    let unital = match &r.unital {
        UnitalMatch::Found(h) => json!({"status": "found", "map": hom_json(h)}),
        UnitalMatch::None => json!({"status": "none"}),
        UnitalMatch::Unsupported(why) => json!({"status": "unsupported", "reason": why}),
    };
    let theorems: Vec<Value> = r
        .applicable_theorems
        .iter()
        .map(|t| {
            json!({
                "name": t.name,
                "conclusion": t.conclusion,
                "ring_hypotheses": t.ring_hypotheses.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "unital": t.unital,
                "holds_under_flags": t.holds_under(flags),
            })
        })
        .collect();
    json!({
        "pis_e": pis_json(&r.pis_e),
        "pis_f": pis_json(&r.pis_f),
        "bf_e": bf_json(&r.bf_e),
        "bf_f": bf_json(&r.bf_f),
        "bf_iso": r.bf_iso.as_ref().map(hom_json),
        "unital_iso": unital,
        "certificate": r.certificate.as_ref().map(|c| certificate_json(c, e, f)),
        "applicable_theorems": theorems,
        "ring_flags": {
            "regular_supercoherent": flags.regular_supercoherent,
            "two_invertible": flags.two_invertible,
            "minus_one_positive": flags.minus_one_positive,
        },
    })
}

pub fn obstruction_json(o: &GradedObstruction) -> Value {
    json!({
        "possible": o.possible,
        "source": group_to_json(&o.source),
        "target": group_to_json(&o.target),
        "witness": o.witness.as_ref().map(hom_json),
        "reason": o.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_report_shape() {
        let r = invariant_report("r2", &Graph::rose(2));
        assert_eq!(r["graph_id"], "r2");
        assert_eq!(r["bf"]["factors"], json!([]));
        assert_eq!(r["bf_twisted"]["factors"], json!(["3"]));
        assert_eq!(r["dets"]["det_bf"], "-1");
        assert_eq!(r["flags"]["pis"]["purely_infinite_simple"], true);
        let sink = Graph::from_strs(&["v"], &[]).unwrap();
        assert!(invariant_report("s", &sink)["dets"].is_null());
    }

    #[test]
    fn stable_output() {
        let g = Graph::from_adjacency(&[vec![1, 3], vec![1, 1]]);
        let a = serde_json::to_string(&invariant_report("x", &g)).unwrap();
        let b = serde_json::to_string(&invariant_report("x", &g)).unwrap();
        assert_eq!(a, b);
    }
}
