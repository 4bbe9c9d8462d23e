//! Rendering of command results in the three output formats.
//!
//! JSON objects all carry `"schema": 1` so downstream consumers can detect
//! layout changes. Plain output is line oriented for reading in a
//! terminal; CSV is either `field,value` rows for single-object results or
//! one record per item for lists.

use clap::ValueEnum;
use serde_json::{json, Value};

use sepnoether_core::blockmonoid::{Context, MultVector};
use sepnoether_core::constructions::{ConstructionKind, TheoremReport, WitnessPackage};
use sepnoether_core::lattice::{
    DivisibilityCertificate, GroupAtomVerdict, ScalingRefutation, Term,
};
use sepnoether_core::{Error, GroupSpec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

fn internal<E: std::fmt::Display>(e: E) -> Error {
    Error::Internal(format!("output rendering: {e}"))
}

fn csv_rows(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(internal)?;
    String::from_utf8(bytes).map_err(internal)
}

fn element_strings(ctx: &Context) -> Vec<String> {
    ctx.elements().iter().map(|e| e.to_string()).collect()
}

fn terms_json(terms: &[Term]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|t| json!({"coeff": t.coeff, "vector": t.vector.to_string()}))
            .collect(),
    )
}

fn terms_expr(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("{}*{}", t.coeff, t.vector));
        } else if t.coeff < 0 {
            out.push_str(&format!(" - {}*{}", -t.coeff, t.vector));
        } else {
            out.push_str(&format!(" + {}*{}", t.coeff, t.vector));
        }
    }
    out
}

pub fn group_info(
    fmt: Format,
    group: &GroupSpec,
    davenport: Option<u64>,
    identity_note: &str,
) -> Result<String> {
    let order = group.order()?;
    let upper = sepnoether_core::sepnoether::upper_bound(group);
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": group.to_string(),
            "alias": group.alias_name(),
            "moduli": group.moduli(),
            "rank": group.rank(),
            "exponent": group.exponent(),
            "order": order,
            "d_star": group.d_star(),
            "upper_bound": upper,
            "davenport": davenport,
        }))
        .map_err(internal)?),
        Format::Plain => {
            let mut out = format!(
                "group: {} ({})\nrank: {}\nexponent: {}\norder: {}\nd*: {}\nbeta_sep upper bound: {}\n",
                group,
                group.alias_name(),
                group.rank(),
                group.exponent(),
                order,
                group.d_star(),
                upper,
            );
            if let Some(d) = davenport {
                out.push_str(&format!("davenport: {d}\n"));
            }
            out.push_str(&format!("note: {identity_note}"));
            Ok(out)
        }
        Format::Csv => {
            let mut rows = vec![
                vec!["field".into(), "value".into()],
                vec!["group".into(), group.to_string()],
                vec!["alias".into(), group.alias_name()],
                vec!["rank".into(), group.rank().to_string()],
                vec!["exponent".into(), group.exponent().to_string()],
                vec!["order".into(), order.to_string()],
                vec!["d_star".into(), group.d_star().to_string()],
                vec!["upper_bound".into(), upper.to_string()],
            ];
            if let Some(d) = davenport {
                rows.push(vec!["davenport".into(), d.to_string()]);
            }
            csv_rows(rows)
        }
    }
}

pub fn atoms(
    fmt: Format,
    group: &GroupSpec,
    ctx: &Context,
    atoms: &[MultVector],
    max_len: Option<u64>,
) -> Result<String> {
    let longest = atoms.iter().map(|a| a.length()).max();
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": group.to_string(),
            "elements": element_strings(ctx),
            "orders": ctx.orders(),
            "max_len": max_len,
            "count": atoms.len(),
            "max_length": longest,
            "atoms": atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        }))
        .map_err(internal)?),
        Format::Plain => {
            let mut out = format!(
                "group: {}\nelements: {}\natoms: {}",
                group,
                element_strings(ctx).join(" "),
                atoms.len(),
            );
            if let Some(cap) = max_len {
                out.push_str(&format!(" (length <= {cap})"));
            }
            out.push('\n');
            for a in atoms {
                out.push_str(&format!("  {} (length {})\n", a, a.length()));
            }
            if let Some(l) = longest {
                out.push_str(&format!("longest: {l}"));
            } else {
                out.push_str("longest: none");
            }
            Ok(out)
        }
        Format::Csv => {
            let mut rows = vec![vec!["vector".into(), "length".into()]];
            for a in atoms {
                rows.push(vec![a.to_string(), a.length().to_string()]);
            }
            csv_rows(rows)
        }
    }
}

pub fn group_atom(
    fmt: Format,
    group: &GroupSpec,
    ctx: &Context,
    vector: &MultVector,
    is_atom: bool,
    verdict: &GroupAtomVerdict,
) -> Result<String> {
    let witness_json = verdict.witness.as_ref().map(|terms| {
        json!({
            "target": vector.to_string(),
            "terms": terms_json(terms),
        })
    });
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": group.to_string(),
            "elements": element_strings(ctx),
            "vector": vector.to_string(),
            "is_atom": is_atom,
            "is_group_atom": verdict.is_group_atom,
            "generating_set_size": verdict.generating_set_size,
            "witness": witness_json,
        }))
        .map_err(internal)?),
        Format::Plain => {
            let mut out = format!(
                "group: {}\nelements: {}\nvector: {} (length {})\nis_atom: {}\nis_group_atom: {}\nshorter atoms spanned: {}",
                group,
                element_strings(ctx).join(" "),
                vector,
                vector.length(),
                is_atom,
                verdict.is_group_atom,
                verdict.generating_set_size,
            );
            if let Some(terms) = &verdict.witness {
                out.push_str(&format!(
                    "\ndecomposition: {} = {}",
                    vector,
                    terms_expr(terms)
                ));
            }
            Ok(out)
        }
        Format::Csv => {
            let mut rows = vec![
                vec!["field".into(), "value".into()],
                vec!["group".into(), group.to_string()],
                vec!["elements".into(), element_strings(ctx).join(" ")],
                vec!["vector".into(), vector.to_string()],
                vec!["is_atom".into(), is_atom.to_string()],
                vec!["is_group_atom".into(), verdict.is_group_atom.to_string()],
                vec![
                    "generating_set_size".into(),
                    verdict.generating_set_size.to_string(),
                ],
            ];
            if let Some(terms) = &verdict.witness {
                rows.push(vec!["decomposition".into(), terms_expr(terms)]);
            }
            csv_rows(rows)
        }
    }
}

pub fn refutation(
    fmt: Format,
    group: &GroupSpec,
    ctx: &Context,
    vector: &MultVector,
    r: &ScalingRefutation,
) -> Result<String> {
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": group.to_string(),
            "elements": element_strings(ctx),
            "vector": vector.to_string(),
            "is_group_atom": false,
            "refutation": {
                "ell": r.ell,
                "ell_hat": r.ell_hat,
                "branch": r.branch,
                "scaled": r.scaled.to_string(),
                "terms": terms_json(&r.terms),
            },
        }))
        .map_err(internal)?),
        Format::Plain => Ok(format!(
            "group: {}\nelements: {}\nvector: {} (length {})\nis_group_atom: false\nscaling unit: {} (inverse {}, branch {})\nscaled vector: {}\ndecomposition: {} = {}",
            group,
            element_strings(ctx).join(" "),
            vector,
            vector.length(),
            r.ell,
            r.ell_hat,
            r.branch,
            r.scaled,
            vector,
            terms_expr(&r.terms),
        )),
        Format::Csv => csv_rows(vec![
            vec!["field".into(), "value".into()],
            vec!["group".into(), group.to_string()],
            vec!["elements".into(), element_strings(ctx).join(" ")],
            vec!["vector".into(), vector.to_string()],
            vec!["is_group_atom".into(), "false".into()],
            vec!["ell".into(), r.ell.to_string()],
            vec!["ell_hat".into(), r.ell_hat.to_string()],
            vec!["branch".into(), r.branch.to_string()],
            vec!["scaled".into(), r.scaled.to_string()],
            vec!["decomposition".into(), terms_expr(&r.terms)],
        ]),
    }
}

pub struct BetaSepData {
    pub group: String,
    pub beta_sep: u64,
    pub upper_bound: u64,
    pub witness_elements: Vec<String>,
    pub witness_vector: String,
    pub subsets_examined: u64,
    pub subsets_pruned: u64,
    pub elapsed_ms: u128,
    pub cache: &'static str,
}

pub fn beta_sep(fmt: Format, d: &BetaSepData) -> Result<String> {
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": d.group,
            "beta_sep": d.beta_sep,
            "upper_bound": d.upper_bound,
            "witness": {
                "elements": d.witness_elements,
                "vector": d.witness_vector,
            },
            "subsets_examined": d.subsets_examined,
            "elapsed_ms": d.elapsed_ms,
        }))
        .map_err(internal)?),
        Format::Plain => Ok(format!(
            "group: {}\nbeta_sep: {}\nupper bound: {}\nwitness elements: {}\nwitness vector: {}\nsubsets examined: {}\nsubsets pruned: {}\nelapsed: {} ms\ncache: {}",
            d.group,
            d.beta_sep,
            d.upper_bound,
            d.witness_elements.join(" "),
            d.witness_vector,
            d.subsets_examined,
            d.subsets_pruned,
            d.elapsed_ms,
            d.cache,
        )),
        Format::Csv => csv_rows(vec![
            vec![
                "group".into(),
                "beta_sep".into(),
                "upper_bound".into(),
                "witness_elements".into(),
                "witness_vector".into(),
                "subsets_examined".into(),
                "elapsed_ms".into(),
            ],
            vec![
                d.group.clone(),
                d.beta_sep.to_string(),
                d.upper_bound.to_string(),
                d.witness_elements.join(" "),
                d.witness_vector.clone(),
                d.subsets_examined.to_string(),
                d.elapsed_ms.to_string(),
            ],
        ]),
    }
}

fn kind_fields(pkg: &WitnessPackage) -> (&'static str, Option<u64>) {
    match pkg.kind {
        ConstructionKind::OddRank => ("odd-rank", None),
        ConstructionKind::EvenRank { prime } => ("even-rank", Some(prime)),
    }
}

fn certificate_json(pkg: &WitnessPackage, cert: &DivisibilityCertificate) -> Value {
    json!({
        "index": pkg.certificate_index,
        "divisor": pkg.certificate_divisor,
        "holds": cert.holds,
        "sub_support_entries_divisible": cert.sub_support_entries_divisible,
        "target_entry_indivisible": cert.target_entry_indivisible,
        "full_support_not_shorter": cert.full_support_not_shorter,
    })
}

pub fn witness(
    fmt: Format,
    pkg: &WitnessPackage,
    cert: &DivisibilityCertificate,
    verified: bool,
) -> Result<String> {
    let (kind, prime) = kind_fields(pkg);
    let group = pkg.context.group();
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({
            "schema": 1,
            "group": group.to_string(),
            "kind": kind,
            "prime": prime,
            "elements": element_strings(&pkg.context),
            "vector": pkg.vector.to_string(),
            "length": pkg.claimed_length,
            "certificate": certificate_json(pkg, cert),
            "group_atom_verified": verified,
        }))
        .map_err(internal)?),
        Format::Plain => {
            let mut out = format!("group: {}\nconstruction: {kind}", group,);
            if let Some(p) = prime {
                out.push_str(&format!(" (prime {p})"));
            }
            out.push_str(&format!(
                "\nelements: {}\nvector: {} (length {})\ncertificate: index {}, divisor {} -> {}\ngroup atom verified: {}",
                element_strings(&pkg.context).join(" "),
                pkg.vector,
                pkg.claimed_length,
                pkg.certificate_index,
                pkg.certificate_divisor,
                if cert.holds { "holds" } else { "FAILS" },
                verified,
            ));
            Ok(out)
        }
        Format::Csv => csv_rows(vec![
            vec!["field".into(), "value".into()],
            vec!["group".into(), group.to_string()],
            vec!["kind".into(), kind.into()],
            vec![
                "prime".into(),
                prime.map_or_else(String::new, |p| p.to_string()),
            ],
            vec!["elements".into(), element_strings(&pkg.context).join(" ")],
            vec!["vector".into(), pkg.vector.to_string()],
            vec!["length".into(), pkg.claimed_length.to_string()],
            vec![
                "certificate_index".into(),
                pkg.certificate_index.to_string(),
            ],
            vec![
                "certificate_divisor".into(),
                pkg.certificate_divisor.to_string(),
            ],
            vec!["certificate_holds".into(), cert.holds.to_string()],
            vec!["group_atom_verified".into(), verified.to_string()],
        ]),
    }
}

fn report_json(r: &TheoremReport) -> Value {
    let (kind, prime) = kind_fields(&r.construction);
    json!({
        "group": r.group.to_string(),
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "beta_sep": r.beta,
        "witness_verified": r.witness_verified,
        "construction": {
            "kind": kind,
            "prime": prime,
            "elements": element_strings(&r.construction.context),
            "vector": r.construction.vector.to_string(),
            "length": r.construction.claimed_length,
            "certificate": certificate_json(&r.construction, &r.certificate),
        },
        "theorems": r.entries.iter().map(|e| {
            json!({
                "theorem": e.id.wire_id(),
                "applies": e.applies,
                "hypotheses": e.hypotheses.iter()
                    .map(|(k, v)| ((*k).to_string(), Value::Bool(*v)))
                    .collect::<serde_json::Map<String, Value>>(),
                "closed_form": e.closed_form,
                "computed": e.computed,
                "status": e.status.as_str(),
            })
        }).collect::<Vec<_>>(),
    })
}

fn report_plain(r: &TheoremReport) -> String {
    let (kind, prime) = kind_fields(&r.construction);
    let mut out = format!("group: {}\nconstruction: {kind}", r.group);
    if let Some(p) = prime {
        out.push_str(&format!(" (prime {p})"));
    }
    out.push_str(&format!(
        "\n  elements: {}\n  vector: {} (length {})\n  certificate: index {}, divisor {} -> {}\n  witness verified: {}\nlower bound: {}\nupper bound: {}\nbeta_sep: {}\n",
        element_strings(&r.construction.context).join(" "),
        r.construction.vector,
        r.construction.claimed_length,
        r.construction.certificate_index,
        r.construction.certificate_divisor,
        if r.certificate.holds { "holds" } else { "FAILS" },
        r.witness_verified,
        r.lower_bound,
        r.upper_bound,
        r.beta.map_or_else(|| "skipped (over sweep cap)".to_string(), |b| b.to_string()),
    ));
    for e in &r.entries {
        out.push_str(&format!(
            "{}: applies={} closed={} computed={} status={}\n",
            e.id.wire_id(),
            if e.applies { "yes" } else { "no" },
            e.closed_form
                .map_or_else(|| "-".to_string(), |c| c.to_string()),
            e.computed
                .map_or_else(|| "-".to_string(), |c| c.to_string()),
            e.status.as_str(),
        ));
    }
    out.pop();
    out
}

pub fn verify(fmt: Format, reports: &[TheoremReport]) -> Result<String> {
    match fmt {
        Format::Json => {
            let value = if reports.len() == 1 {
                let mut v = report_json(&reports[0]);
                v.as_object_mut().unwrap().insert("schema".into(), json!(1));
                v
            } else {
                json!({
                    "schema": 1,
                    "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                })
            };
            serde_json::to_string_pretty(&value).map_err(internal)
        }
        Format::Plain => Ok(reports
            .iter()
            .map(report_plain)
            .collect::<Vec<_>>()
            .join("\n\n")),
        Format::Csv => {
            let mut rows = vec![vec![
                "group".into(),
                "lower_bound".into(),
                "upper_bound".into(),
                "beta_sep".into(),
                "theorem".into(),
                "applies".into(),
                "closed_form".into(),
                "computed".into(),
                "status".into(),
            ]];
            for r in reports {
                for e in &r.entries {
                    rows.push(vec![
                        r.group.to_string(),
                        r.lower_bound.to_string(),
                        r.upper_bound.to_string(),
                        r.beta.map_or_else(String::new, |b| b.to_string()),
                        e.id.wire_id().into(),
                        e.applies.to_string(),
                        e.closed_form.map_or_else(String::new, |c| c.to_string()),
                        e.computed.map_or_else(String::new, |c| c.to_string()),
                        e.status.as_str().into(),
                    ]);
                }
            }
            csv_rows(rows)
        }
    }
}
