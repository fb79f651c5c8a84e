use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use wordmap::finite::{
    self, image_stats, sampled_image, trace_set, ClassStructure, ElementSet, EngineOptions, GroupKind, GroupTable,
    Target,
};
use wordmap::roots::{
    self, build_root_system, coxeter_element, d_type_cycle_element, is_fixed_point_free,
    longest_element_is_minus_one, orderings, power_map_surjective, strictly_firm_parabolic, Isogeny, RootType,
};
use wordmap::symbolic::{self, ng_operator_analysis, WeightModule};
use wordmap::{parse_word, Parsed, Word};

use crate::config::{group_constants, integer_constants, ExperimentConfig};
use crate::CliError;

pub const COMMANDS: &[&str] = &[
    "image",
    "image-const",
    "trace-image",
    "stats",
    "magnus",
    "primeset",
    "trace-poly",
    "counts",
    "width",
    "covering",
    "thompson",
    "identity-scan",
    "coxeter",
    "fpf",
    "firm",
    "power-surj",
    "ng",
];

/// A row of a tabular sweep.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    #[serde(rename = "type")]
    pub root_type: String,
    pub rank: usize,
    pub param: String,
    pub result: String,
    pub witness: String,
}

pub struct Outcome {
    pub results: Value,
    pub rows: Option<Vec<Row>>,
    pub exhaustive: bool,
}

impl Outcome {
    fn exact(results: Value) -> Self {
        Outcome {
            results,
            rows: None,
            exhaustive: true,
        }
    }

    fn table(results: Value, rows: Vec<Row>) -> Self {
        Outcome {
            results,
            rows: Some(rows),
            exhaustive: true,
        }
    }
}

/// The full report for one experiment.
pub struct Report {
    pub json: Value,
    pub rows: Option<Vec<Row>>,
}

pub fn run(command: &str, cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let echo = cfg.normalized(command)?;
    let opts = EngineOptions {
        workers: cfg.workers(),
        budget: cfg.budget()?,
    };
    let start = Instant::now();
    let outcome = dispatch(command, cfg, &opts)?;
    let mut provenance = Map::new();
    provenance.insert("tool".into(), json!("wordmap"));
    provenance.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    provenance.insert("workers".into(), json!(opts.workers));
    provenance.insert("exhaustive".into(), json!(outcome.exhaustive));
    provenance.insert("lower_bound".into(), json!(!outcome.exhaustive));
    if cfg.timing {
        provenance.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    let json = json!({
        "schema": 1,
        "command": command,
        "config": echo,
        "results": outcome.results,
        "provenance": provenance,
    });
    Ok(Report {
        json,
        rows: outcome.rows,
    })
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parsed(cfg: &ExperimentConfig) -> Result<Parsed, CliError> {
    Ok(parse_word(cfg.require_word()?, cfg.arity)?)
}

fn plain_word(cfg: &ExperimentConfig) -> Result<Word, CliError> {
    Ok(parsed(cfg)?.into_word()?)
}

fn set_summary(g: &GroupTable, img: &ElementSet) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("group".into(), json!(g.label()));
    m.insert("group_order".into(), json!(g.order()));
    m.insert("image_size".into(), json!(img.count()));
    m.insert("surjective".into(), json!(img.is_full()));
    m.insert("image_hex".into(), json!(img.to_hex()));
    m
}

/// Image of a parsed word, exhaustive or sampled.
fn image_of(
    cfg: &ExperimentConfig,
    target: Target<'_>,
    g: &GroupTable,
    opts: &EngineOptions,
) -> Result<(ElementSet, bool), CliError> {
    match cfg.samples {
        Some(n) => {
            let seed = cfg.seed.ok_or_else(|| input("--seed is required with --samples"))?;
            Ok((sampled_image(target, g, n, seed, opts)?, false))
        }
        None => Ok((finite::target_image(target, g, opts)?, true)),
    }
}

fn with_image<R>(
    cfg: &ExperimentConfig,
    g: &GroupTable,
    opts: &EngineOptions,
    f: impl FnOnce(&ElementSet, bool, Map<String, Value>) -> Result<R, CliError>,
) -> Result<R, CliError> {
    let mut extra = Map::new();
    match parsed(cfg)? {
        Parsed::Word(w) => {
            extra.insert("word".into(), json!(w.to_string()));
            let (img, exhaustive) = image_of(cfg, Target::Word(&w), g, opts)?;
            f(&img, exhaustive, extra)
        }
        Parsed::WithConstants(wc) => {
            let cs = ClassStructure::new(g);
            let consts = group_constants(cfg, g, &cs)?;
            if consts.len() != wc.num_constants() {
                return Err(wordmap::Error::ConstantCount {
                    expected: wc.num_constants(),
                    got: consts.len(),
                }
                .into());
            }
            if !cfg.allow_central {
                if let Some(i) = consts.iter().position(|&c| g.is_central(c)) {
                    return Err(wordmap::Error::CentralConstant(i + 1).into());
                }
            }
            extra.insert("word".into(), json!(wc.to_string()));
            extra.insert(
                "constants".into(),
                json!(consts.iter().map(|&c| g.element(c).to_string()).collect::<Vec<_>>()),
            );
            let (img, exhaustive) = image_of(cfg, Target::WithConstants(&wc, &consts), g, opts)?;
            f(&img, exhaustive, extra)
        }
    }
}

fn sampled_fields(cfg: &ExperimentConfig, exhaustive: bool, m: &mut Map<String, Value>) {
    if !exhaustive {
        m.insert("lower_bound".into(), json!(true));
        m.insert("samples".into(), json!(cfg.samples));
        m.insert("seed".into(), json!(cfg.seed));
        // a sampled image that is not everything says nothing about surjectivity
        if m.get("surjective") == Some(&json!(false)) {
            m.insert("surjective".into(), Value::Null);
        }
    }
}

fn root_type(cfg: &ExperimentConfig) -> Result<(RootType, usize), CliError> {
    let label = cfg.root_type.as_deref().ok_or_else(|| input("--type is required"))?;
    let (t, rank) = RootType::parse_with_rank(label)?;
    let rank = match (rank, cfg.rank) {
        (Some(a), Some(b)) if a != b => return Err(input(format!("type {label} conflicts with --rank {b}"))),
        (Some(a), _) => a,
        (None, _) => cfg.need_rank(t)?,
    };
    t.check_rank(rank)?;
    Ok((t, rank))
}

fn shipped_types() -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=8).map(|r| (RootType::A, r)));
    out.extend((2..=8).map(|r| (RootType::B, r)));
    out.extend((2..=8).map(|r| (RootType::C, r)));
    out.extend((3..=8).map(|r| (RootType::D, r)));
    out.extend([(RootType::E6, 6), (RootType::E7, 7), (RootType::E8, 8), (RootType::F4, 4), (RootType::G2, 2)]);
    out
}

fn ordering_text(o: &[usize]) -> String {
    o.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: &str, cfg: &ExperimentConfig, opts: &EngineOptions) -> Result<Outcome, CliError> {
    match command {
        "image" => {
            let g = cfg.group()?;
            let w = plain_word(cfg)?;
            let (img, exhaustive) = image_of(cfg, Target::Word(&w), &g, opts)?;
            let mut m = set_summary(&g, &img);
            m.insert("word".into(), json!(w.to_string()));
            sampled_fields(cfg, exhaustive, &mut m);
            Ok(Outcome {
                results: Value::Object(m),
                rows: None,
                exhaustive,
            })
        }
        "image-const" => {
            let g = cfg.group()?;
            if !matches!(parsed(cfg)?, Parsed::WithConstants(_)) {
                return Err(input("image-const needs a word with constants #k"));
            }
            with_image(cfg, &g, opts, |img, exhaustive, extra| {
                let mut m = set_summary(&g, img);
                m.extend(extra);
                sampled_fields(cfg, exhaustive, &mut m);
                Ok(Outcome {
                    results: Value::Object(m),
                    rows: None,
                    exhaustive,
                })
            })
        }
        "trace-image" => {
            let g = cfg.group()?;
            with_image(cfg, &g, opts, |img, exhaustive, extra| {
                let t = trace_set(img, &g)?;
                let mut m = Map::new();
                m.insert("group".into(), json!(g.label()));
                m.insert(
                    "invariant".into(),
                    json!(if g.kind() == GroupKind::Sl2 { "trace" } else { "tr^2/det" }),
                );
                m.insert("values".into(), json!(t.values));
                m.insert("cardinality".into(), json!(t.cardinality));
                m.insert("full_cardinality".into(), json!(t.full_cardinality));
                m.insert("singleton".into(), json!(t.singleton));
                m.extend(extra);
                sampled_fields(cfg, exhaustive, &mut m);
                Ok(Outcome {
                    results: Value::Object(m),
                    rows: None,
                    exhaustive,
                })
            })
        }
        "stats" => {
            let g = cfg.group()?;
            with_image(cfg, &g, opts, |img, exhaustive, extra| {
                let s = image_stats(img, &g);
                let mut m = match serde_json::to_value(&s).expect("serializable") {
                    Value::Object(m) => m,
                    _ => unreachable!(),
                };
                m.insert("group".into(), json!(g.label()));
                m.insert("group_order".into(), json!(g.order()));
                m.extend(extra);
                sampled_fields(cfg, exhaustive, &mut m);
                Ok(Outcome {
                    results: Value::Object(m),
                    rows: None,
                    exhaustive,
                })
            })
        }
        "magnus" => {
            let w = plain_word(cfg)?;
            let f = symbolic::f_w(&w)?;
            Ok(Outcome::exact(json!({
                "word": w.to_string(),
                "f_w": f.to_string(),
                "terms": f.to_json(),
                "in_F2": f.is_zero(),
            })))
        }
        "primeset" => {
            let w = plain_word(cfg)?;
            let primes: Vec<Value> = symbolic::prime_set(&w)?
                .iter()
                .map(|p| match u64::try_from(p) {
                    Ok(v) => json!(v),
                    Err(_) => json!(p.to_string()),
                })
                .collect();
            Ok(Outcome::exact(json!({ "word": w.to_string(), "S_w": primes })))
        }
        "trace-poly" => {
            let w = plain_word(cfg)?;
            let consts = integer_constants(&cfg.constants)?;
            let psi = symbolic::trace_polynomial(&w, &consts)?;
            let zero = num_bigint::BigInt::from(0);
            Ok(Outcome::exact(json!({
                "word": w.to_string(),
                "psi": psi.to_string(),
                "terms": psi.to_json(),
                "constant": psi.is_constant(),
                "trivial_at_identity": symbolic::trace::trivial_at_identity(&w, &consts),
                "psi_at_origin": psi.eval(&zero, &zero).to_string(),
            })))
        }
        "counts" => {
            let g = cfg.group()?;
            let w = plain_word(cfg)?;
            let ww = finite::count_ww(&w, &g, opts)?;
            let tw = if g.kind() == GroupKind::Sl2 {
                Some(finite::count_tw(&w, &g, opts)? as u64)
            } else {
                None
            };
            Ok(Outcome::exact(json!({
                "word": w.to_string(),
                "group": g.label(),
                "tuples": finite::engine::tuple_count(g.order(), w.arity() as usize) as u64,
                "W_w": ww as u64,
                "T_w": tw,
            })))
        }
        "width" => {
            let g = cfg.group()?;
            let width = finite::commutator_width(&g, opts)?;
            let derived = finite::derived_subgroup(&g, opts)?;
            Ok(Outcome::exact(json!({
                "group": g.label(),
                "group_order": g.order(),
                "commutator_width": width,
                "derived_subgroup_order": derived.count(),
                "perfect": derived.is_full(),
            })))
        }
        "covering" => {
            let g = cfg.group()?;
            let c = finite::covering_numbers(&g, opts)?;
            let cs = ClassStructure::new(&g);
            let powers: Vec<Value> = c
                .class_powers
                .iter()
                .map(|&(id, m)| json!({ "class": id, "size": cs.classes()[id as usize].size, "least_m": m }))
                .collect();
            Ok(Outcome::exact(json!({
                "group": g.label(),
                "covering_number": c.covering,
                "extended_covering_number": c.extended,
                "classes": powers,
            })))
        }
        "thompson" => {
            let g = cfg.group()?;
            let cs = ClassStructure::new(&g);
            let mut rows = Vec::new();
            let mut classes = Vec::new();
            for (id, class) in cs.classes().iter().enumerate() {
                let covers = cs.covers(&[id as u32, id as u32])?;
                classes.push(json!({
                    "class": id,
                    "representative": g.element(class.representative).to_string(),
                    "size": class.size,
                    "square_is_group": covers,
                }));
                rows.push(Row {
                    root_type: g.label(),
                    rank: class.size,
                    param: id.to_string(),
                    result: covers.to_string(),
                    witness: g.element(class.representative).to_string(),
                });
            }
            let found = cs.thompson_classes();
            Ok(Outcome::table(
                json!({
                    "group": g.label(),
                    "group_order": g.order(),
                    "classes": classes,
                    "found": !found.is_empty(),
                    "covering_classes": found,
                }),
                rows,
            ))
        }
        "identity-scan" => {
            let g = cfg.group()?;
            let max_len = cfg.max_len.unwrap_or(4);
            let arity = cfg.arity.unwrap_or(1);
            let scan = finite::identity_scan(&g, max_len, arity, opts)?;
            let mut v = serde_json::to_value(&scan).expect("serializable");
            v["group"] = json!(g.label());
            Ok(Outcome::exact(v))
        }
        "coxeter" => {
            let (t, r) = root_type(cfg)?;
            let rs = build_root_system(t, r)?;
            let list: Vec<Vec<usize>> = if cfg.all_orderings {
                if r > 7 {
                    return Err(input("--all-orderings is limited to rank <= 7"));
                }
                orderings(r)
            } else {
                vec![cfg.ordering.clone().unwrap_or_else(|| (1..=r).collect())]
            };
            let mut rows = Vec::new();
            let mut elements = Vec::new();
            for o in &list {
                let c = coxeter_element(&rs, o)?;
                let fpf = is_fixed_point_free(&c, &rs);
                let poly: Vec<String> = c.char_poly().iter().map(|x| x.to_string()).collect();
                rows.push(Row {
                    root_type: t.to_string(),
                    rank: r,
                    param: ordering_text(o),
                    result: fpf.to_string(),
                    witness: String::new(),
                });
                elements.push(json!({
                    "ordering": o,
                    "order": c.order(),
                    "fixed_point_free": fpf,
                    "det_minus_identity": c.det_minus_identity().to_string(),
                    "char_poly": poly,
                    "matrix": c.simple,
                    "permutes_roots": c.permutes_roots(&rs),
                }));
            }
            let mut m = Map::new();
            m.insert("type".into(), json!(t.to_string()));
            m.insert("rank".into(), json!(r));
            m.insert("num_roots".into(), json!(rs.num_roots()));
            m.insert("longest_element_is_minus_one".into(), json!(longest_element_is_minus_one(t, r)?));
            m.insert("elements".into(), json!(elements));
            if cfg.dump_roots {
                m.insert("root_system".into(), rs.to_json());
            }
            Ok(Outcome::table(Value::Object(m), rows))
        }
        "fpf" => {
            let types = if cfg.root_type.is_some() {
                vec![root_type(cfg)?]
            } else {
                shipped_types()
            };
            let mut rows = Vec::new();
            for (t, r) in types {
                let rs = build_root_system(t, r)?;
                let c = roots::standard_coxeter_element(&rs);
                rows.push(Row {
                    root_type: t.to_string(),
                    rank: r,
                    param: "coxeter".into(),
                    result: is_fixed_point_free(&c, &rs).to_string(),
                    witness: String::new(),
                });
                if t == RootType::D {
                    let w = d_type_cycle_element(&rs)?;
                    rows.push(Row {
                        root_type: t.to_string(),
                        rank: r,
                        param: "cycle".into(),
                        result: is_fixed_point_free(&w, &rs).to_string(),
                        witness: String::new(),
                    });
                }
            }
            let all = rows.iter().all(|r| r.result == "true");
            Ok(Outcome::table(json!({ "rows": rows, "all_fixed_point_free": all }), rows))
        }
        "firm" => {
            let (t, r) = root_type(cfg)?;
            let ks: Vec<usize> = match cfg.k {
                Some(k) => vec![k],
                None => (1..=r).collect(),
            };
            let mut rows = Vec::new();
            let mut results = Vec::new();
            for k in ks {
                let f = strictly_firm_parabolic(t, r, k)?;
                let witness = f
                    .witness
                    .as_ref()
                    .map(|w| {
                        w.iter()
                            .map(|[n, d]| if *d == 1 { n.to_string() } else { format!("{n}/{d}") })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                rows.push(Row {
                    root_type: t.to_string(),
                    rank: r,
                    param: k.to_string(),
                    result: f.passes.to_string(),
                    witness,
                });
                results.push(json!({ "k": k, "passes": f.passes, "witness": f.witness }));
            }
            Ok(Outcome::table(json!({ "type": t.to_string(), "rank": r, "results": results }), rows))
        }
        "power-surj" => {
            let (t, r) = root_type(cfg)?;
            let iso: Isogeny = cfg.isogeny.as_deref().unwrap_or("simply_connected").parse()?;
            let p = cfg.p.unwrap_or(1);
            let data = roots::IsogenyData::new(t, r, iso)?;
            let ms: Vec<u64> = match (cfg.m, cfg.m_max) {
                (Some(m), None) if m >= 1 => vec![m as u64],
                (Some(m), None) => return Err(input(format!("m must be >= 1, got {m}"))),
                (None, Some(max)) => (1..=max).collect(),
                (None, None) => return Err(input("--m or --m-max is required")),
                (Some(_), Some(_)) => return Err(input("give either --m or --m-max")),
            };
            let mut rows = Vec::new();
            let mut values = Vec::new();
            for m in &ms {
                let s = power_map_surjective(t, r, iso, p, *m)?;
                values.push(s);
                rows.push(Row {
                    root_type: t.to_string(),
                    rank: r,
                    param: m.to_string(),
                    result: s.to_string(),
                    witness: String::new(),
                });
            }
            let mut m = Map::new();
            m.insert("type".into(), json!(t.to_string()));
            m.insert("rank".into(), json!(r));
            m.insert("center_order".into(), json!(data.center_order));
            m.insert("bad_prime_product".into(), json!(data.bad_prime_product));
            m.insert("p".into(), json!(p));
            if ms.len() == 1 {
                m.insert("m".into(), json!(ms[0]));
                m.insert("surjective".into(), json!(values[0]));
            } else {
                m.insert("m".into(), json!(ms));
                m.insert("surjective".into(), json!(values));
            }
            Ok(Outcome::table(Value::Object(m), rows))
        }
        "ng" => {
            let module = match (&cfg.weights, cfg.highest_weight) {
                (Some(w), None) => WeightModule::new(w.clone(), "custom")?,
                (None, Some(n)) => WeightModule::sl2_irreducible(n),
                _ => return Err(input("give exactly one of --weights or --highest-weight")),
            };
            let m = cfg.m.ok_or_else(|| input("--m is required"))?;
            let m = u32::try_from(m).map_err(|_| input(format!("m must be a positive integer, got {m}")))?;
            let order = cfg.g_order.ok_or_else(|| input("--g-order is required"))?;
            let report = ng_operator_analysis(&module, m, order)?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["weights"] = json!(module.weights);
            Ok(Outcome::exact(v))
        }
        other => Err(input(format!("unknown command {other:?}"))),
    }
}
