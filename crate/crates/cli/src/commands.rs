use rayon::prelude::*;
use serde_json::json;

use combinorm::duality::{self, DualityCache};
use combinorm::emulations::{self as emu, Emulation};
use combinorm::exact::rat::format_rat;
use combinorm::extremals;
use combinorm::families::{schreier, Family, IdSet, Ordinal};
use combinorm::graphs::{self, canon, corpus, io, Graph, Method, Obstruction};
use combinorm::norms::{self, NormContext};
use combinorm::sierpinski;

use crate::input;
use crate::{Construct, EmulateOp, Failure, GraphFormat, NormInput, Outcome};

type Run = Result<Outcome, Failure>;

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    }
}

fn sets_out(sets: &[IdSet], json: bool) {
    if json {
        print_json(&sets);
    } else {
        for s in sets {
            println!("{s}");
        }
    }
}

fn cycle_text(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn norm(i: &NormInput, json: bool) -> Run {
    let p = input::norm_problem(i)?;
    let ctx = NormContext::new(p.family, p.ground)?;
    let v = norms::norm(&ctx, &p.vector)?;
    if json {
        print_json(&json!({ "norm": format_rat(&v) }));
    } else {
        println!("{}", format_rat(&v));
    }
    Ok(Outcome::Ok)
}

pub fn dual_norm(i: &NormInput, json: bool) -> Run {
    let p = input::norm_problem(i)?;
    let ctx = NormContext::new(p.family, p.ground)?;
    let v = norms::dual_norm(&ctx, &p.vector)?;
    if json {
        print_json(&json!({ "dual_norm": format_rat(&v) }));
    } else {
        println!("{}", format_rat(&v));
    }
    Ok(Outcome::Ok)
}

pub fn perp(family: &str, ground: Option<&str>, json: bool) -> Run {
    let f = input::family(family)?;
    let ground = input::ground(&f, ground)?;
    let p = f.perp_on(&ground)?;
    sets_out(&p.max_elements(&ground)?, json);
    Ok(Outcome::Ok)
}

pub fn graphgen_check(family: &str, truncation: usize, json: bool) -> Run {
    let f = input::family(family)?;
    let t = truncation.min(f.universe().len());
    let (ok, witness) = f.is_graph_generated(t)?;
    if json {
        print_json(&json!({ "graph_generated": ok, "witness": witness, "truncation": t }));
    } else if ok {
        println!("graph-generated (checked on {t} elements)");
    } else {
        println!("not graph-generated: witness {}", witness.unwrap_or_default());
    }
    Ok(outcome(ok))
}

pub fn max_elements(family: &str, ground: Option<&str>, json: bool) -> Run {
    let f = input::family(family)?;
    let ground = input::ground(&f, ground)?;
    sets_out(&f.max_elements(&ground)?, json);
    Ok(Outcome::Ok)
}

pub fn perfect_check(graph: &str, method: &str, limit: usize, json: bool) -> Run {
    let g = input::graph(graph)?;
    let method: Method = method.parse()?;
    let v = graphs::perfection_with_limit(&g, method, limit)?;
    if json {
        print_json(&v);
    } else {
        match &v.witness {
            None => println!("perfect"),
            Some(Obstruction::OddHole { cycle }) => println!("imperfect: odd hole ({})", cycle_text(cycle)),
            Some(Obstruction::OddAntihole { cycle }) => {
                println!("imperfect: odd antihole ({})", cycle_text(cycle))
            }
            Some(Obstruction::ChiOmega { vertices, chi, omega }) => println!(
                "imperfect: chi {chi} > omega {omega} on ({})",
                cycle_text(vertices)
            ),
        }
    }
    Ok(outcome(v.perfect))
}

pub fn duality_report(graph: &str, json: bool) -> Run {
    let g = input::graph(graph)?;
    let r = duality::duality_report(&g)?;
    print_json(&r);
    if !json {
        let rows = [
            ("perfect (odd hole/antihole)", r.perfect_spgt),
            ("perfect (chi = omega)", r.perfect_chi_omega),
            ("clique polytope integral", r.chvatal),
            ("(0_V) for all V", r.c0v_all),
            ("(2_V) for all V", r.c2v_all),
        ];
        for (name, b) in rows {
            println!("{name:<30}{b}");
        }
    }
    Ok(outcome(r.agree()))
}

pub fn extreme_check(graph: Option<&str>, vector: Option<&str>, json: bool) -> Run {
    let (Some(graph), Some(vector)) = (graph, vector) else {
        return Err(Failure::Input("extreme needs --graph and --vector, or --construct".into()));
    };
    let g = input::graph(graph)?;
    let x = input::vector(vector)?;
    let r = extremals::extreme_report(&g, &x)?;
    if json {
        print_json(&r);
    } else {
        let verdict = if r.extreme { "extreme" } else { "not extreme" };
        println!("{verdict} (rank {} of {})", r.rank, r.dimension);
        for c in &r.tight_cliques {
            println!("tight {c}");
        }
    }
    Ok(outcome(r.extreme))
}

pub fn extreme_construct(
    c: Construct,
    graph: Option<&str>,
    hole: Option<&str>,
    n: Option<u32>,
    signs: Option<&str>,
    q: Option<&str>,
    json: bool,
) -> Run {
    let need = |what: &str| Failure::Input(format!("--construct needs {what}"));
    let (g, x, extra) = match c {
        Construct::Hole => {
            let g = input::graph(graph.ok_or_else(|| need("--graph"))?)?;
            let hole = match hole {
                Some(h) => input::id_list(h)?,
                None => graphs::find_odd_hole_with_limit(&g, usize::MAX)?
                    .ok_or_else(|| Failure::Input("graph has no odd hole".into()))?,
            };
            let x = extremals::extend_half(&g, &hole)?;
            (g, x, json!({ "hole": hole }))
        }
        Construct::Antihole => {
            let n = n.ok_or_else(|| need("--n"))?;
            let signs = signs.map(input::signs).transpose()?;
            let p = extremals::antihole_point(n, signs.as_deref())?;
            let extra = json!({ "determinant": format_rat(&p.determinant) });
            (p.graph, p.x, extra)
        }
        Construct::Rational => {
            let q = input::rat(q.ok_or_else(|| need("--q"))?)?;
            let p = extremals::rational_gadget(&q)?;
            let extra = json!({ "w": p.w, "clique": p.clique, "determinant": format_rat(&p.determinant) });
            (p.graph, p.x, extra)
        }
    };
    let r = extremals::extreme_report(&g, &x)?;
    if json {
        print_json(&json!({ "graph": g, "x": x, "extreme": r.extreme, "rank": r.rank, "details": extra }));
    } else {
        println!("{x}");
        println!("{}", if r.extreme { "extreme" } else { "not extreme" });
    }
    Ok(outcome(r.extreme))
}

pub fn emulate(
    op: EmulateOp,
    files: &[String],
    times: u32,
    labels: u32,
    increasing: bool,
    family: Option<&str>,
    json: bool,
) -> Run {
    let parts: Vec<Emulation> = files.iter().map(|p| input::emulation(p)).collect::<Result<_, _>>()?;
    let base = || {
        if increasing {
            Emulation::increasing(labels)
        } else {
            Emulation::decreasing(labels)
        }
    };
    let e = match op {
        EmulateOp::Base => base(),
        EmulateOp::Schreier => {
            let mut e = match parts.as_slice() {
                [] => base(),
                [one] => one.clone(),
                _ => return Err(Failure::Input("schreier takes at most one --emulation".into())),
            };
            for _ in 0..times {
                e = emu::schreier_transform(&e)?;
            }
            e
        }
        EmulateOp::Dstar if parts.is_empty() => emu::star_omega_emulation(labels)?,
        EmulateOp::Dstar => emu::dstar_transform(&parts)?,
        EmulateOp::Union => emu::union_shift(&parts)?,
        EmulateOp::Farah => emu::farah_shift(&parts)?,
    };
    let Some(family) = family else {
        print_json(&e);
        return Ok(Outcome::Ok);
    };
    let f = input::family(family)?;
    let v = emu::verify_emulation(&e, &f, e.blocks().len())?;
    if json {
        print_json(&json!({ "emulation": e, "verification": v }));
    } else {
        print_json(&e);
        print_verification(&v);
    }
    Ok(outcome(v.ok))
}

fn print_verification(v: &emu::Verification) {
    match &v.counterexample {
        None => println!("emulates ({} sets checked)", v.checked),
        Some(s) => println!("fails at {s} ({} sets checked)", v.checked),
    }
}

pub fn verify_emulation(emulation: &str, family: &str, max_size: Option<usize>, json: bool) -> Run {
    let e = input::emulation(emulation)?;
    let f = input::family(family)?;
    let v = emu::verify_emulation(&e, &f, max_size.unwrap_or(e.blocks().len()))?;
    if json {
        print_json(&v);
    } else {
        print_verification(&v);
    }
    Ok(outcome(v.ok))
}

pub fn search_emulation(family: &str, max_block: u32, json: bool) -> Run {
    let f = input::family(family)?;
    let found = emu::search_emulation(&f, max_block)?;
    match &found {
        Some(e) => print_json(e),
        None if json => print_json(&serde_json::Value::Null),
        None => println!("none"),
    }
    Ok(outcome(found.is_some()))
}

pub fn sierpinski_norm(injection: &str, vector: &str, json: bool) -> Run {
    let ctx = input::injection(injection)?;
    let x = input::vector(vector)?;
    let v = sierpinski::chain_norm(&ctx, &x)?;
    if json {
        print_json(&json!({ "norm": format_rat(&v) }));
    } else {
        println!("{}", format_rat(&v));
    }
    Ok(Outcome::Ok)
}

pub fn sierpinski_graph(injection: &str, n: u32, format: GraphFormat) -> Run {
    let ctx = input::injection(injection)?;
    let g = sierpinski::sierpinski_graph(&ctx, n)?;
    match format {
        GraphFormat::Json => print_json(&g),
        GraphFormat::Dimacs => print!("{}", io::to_dimacs(&g)),
    }
    Ok(Outcome::Ok)
}

pub fn sierpinski_embed(host: &str, guest: &str, n: u32, json: bool) -> Run {
    let host = input::injection(host)?;
    let guest = input::injection(guest)?;
    let map = sierpinski::embed(&host, &guest, n)?;
    if json {
        print_json(&map);
    } else {
        println!("{}", cycle_text(&map));
    }
    Ok(Outcome::Ok)
}

fn ordinal(alpha: &str) -> Result<Ordinal, Failure> {
    Ok(Ordinal::parse(alpha)?)
}

pub fn schreier_member(alpha: &str, variant: &str, set: &str, json: bool) -> Run {
    let a = ordinal(alpha)?;
    let v = input::variant(variant)?;
    let s = input::id_set(set)?;
    if s.iter().any(|&x| x == 0) {
        return Err(Failure::Input("Schreier families live on 1, 2, 3, ...".into()));
    }
    let member = schreier::contains(&a, v, s.as_slice());
    if json {
        print_json(&json!({ "member": member, "set": s }));
    } else {
        println!("{}", if member { "member" } else { "not member" });
    }
    Ok(outcome(member))
}

pub fn schreier_enumerate(alpha: &str, variant: &str, bound: u32, maximal: bool, json: bool) -> Run {
    let a = ordinal(alpha)?;
    let v = input::variant(variant)?;
    let f = Family::schreier(a, v, bound)?;
    let ground = IdSet::range(1, bound);
    let sets = if maximal {
        f.max_elements(&ground)?
    } else {
        f.members(&ground)?
    };
    sets_out(&sets, json);
    Ok(Outcome::Ok)
}

#[derive(serde::Serialize, Default, Clone)]
struct SweepRow {
    n: usize,
    graphs: usize,
    perfect: usize,
    imperfect: usize,
    agreeing: usize,
}

pub fn corpus_sweep(max_n: u32, file: Option<&str>, json: bool) -> Run {
    let text = match file {
        Some(p) => input::read(p)?,
        None => corpus::shipped_text().to_string(),
    };
    let graphs: Vec<Graph> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(canon::from_graph6)
        .collect::<Result<_, _>>()?;
    let graphs: Vec<Graph> = graphs.into_iter().filter(|g| g.order() <= max_n as usize).collect();
    let cache = DualityCache::new();
    let results: Vec<_> = graphs
        .par_iter()
        .map(|g| duality::duality_report_cached(g, &cache))
        .collect();
    let mut rows: Vec<SweepRow> = Vec::new();
    let mut first = None;
    for (g, r) in graphs.iter().zip(&results) {
        let n = g.order();
        if rows.len() <= n {
            rows.resize(n + 1, SweepRow::default());
        }
        let row = &mut rows[n];
        row.n = n;
        row.graphs += 1;
        match r {
            Ok(r) => {
                if r.perfect_spgt {
                    row.perfect += 1;
                } else {
                    row.imperfect += 1;
                }
                if r.agree() {
                    row.agreeing += 1;
                } else if first.is_none() {
                    first = Some(format!("{} {:?}", canon::to_graph6(g), r));
                }
            }
            Err(e) => {
                if first.is_none() {
                    first = Some(format!("{} {e}", canon::to_graph6(g)));
                }
            }
        }
    }
    rows.retain(|r| r.graphs > 0);
    if json {
        print_json(&json!({ "rows": rows, "total": graphs.len(), "first_disagreement": first }));
    } else {
        println!("n\tgraphs\tperfect\timperfect\tagreeing");
        for r in &rows {
            println!("{}\t{}\t{}\t{}\t{}", r.n, r.graphs, r.perfect, r.imperfect, r.agreeing);
        }
        println!("first_disagreement\t{}", first.as_deref().unwrap_or("none"));
    }
    match first {
        None => Ok(Outcome::Ok),
        Some(f) => Err(Failure::Internal(format!("duality checks disagree on {f}"))),
    }
}

pub fn corpus_generate(max_n: u32) -> Run {
    if max_n > 8 {
        return Err(Failure::Input(format!("--max-n {max_n} is above 8")));
    }
    print!("{}", corpus::render(&corpus::generate(max_n)));
    Ok(Outcome::Ok)
}
