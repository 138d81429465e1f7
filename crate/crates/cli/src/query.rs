//! Library-pure verbs. Output depends only on the arguments.

use std::fmt::Write;

use clonoid_core::classcomp::{
    class_compose, gen_clonoid, is_clonoid, left_stable, meet_closure, minor_closure, predicate_class,
    right_stable, GenOptions, LeftStep,
};
use clonoid_core::gf2geom::{codim_set, icodim_set, in_aff, in_icd, preimage, subspaces, support};
use clonoid_core::postlattice::{
    classify_cardinality, clone_closure, covering_edges, dual_clone, enumerate, generators, leq, member,
    table_cell,
};
use clonoid_core::{Anf, BitTuple, BooleanFunction, CloneId, Error, FunctionClass, Predicate};
use serde_json::{json, Map, Value};

use crate::{bool_word, clone_id, function, read_class, BfCmd, ClassArgs, CloneCmd, ClonoidCmd, Gf2Cmd, PairArgs, Reply};

type Result<T> = std::result::Result<T, Error>;

fn anf_text(anf: &Anf) -> String {
    let terms: Vec<String> = anf
        .monomials()
        .iter()
        .map(|m| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn literal_reply(f: &BooleanFunction) -> Reply {
    Reply::new(f.to_string(), json!({ "function": f.to_string() }))
}

fn class_reply(class: &FunctionClass, extra: Map<String, Value>) -> Reply {
    let mut text = String::new();
    for (k, v) in &extra {
        let _ = writeln!(text, "# {k}: {v}");
    }
    text.push_str(&class.to_text());
    let mut obj = extra;
    obj.insert("cap".into(), json!(class.max_arity()));
    obj.insert("size".into(), json!(class.len()));
    obj.insert("class".into(), json!(class.literals()));
    Reply::new(text, Value::Object(obj))
}

fn load_class(args: &ClassArgs) -> Result<FunctionClass> {
    let mut class = match &args.file {
        Some(path) => read_class(path, args.cap)?,
        None => FunctionClass::new(args.cap)?,
    };
    for s in &args.functions {
        class.insert(function(s)?)?;
    }
    Ok(class)
}

fn bit_tuple(s: &str) -> Result<BitTuple> {
    let bits: Vec<bool> = s
        .trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidParameter(format!("`{s}` is not a bit string"))),
        })
        .collect::<Result<_>>()?;
    BitTuple::from_components(&bits)
}

pub(crate) fn bf(cmd: BfCmd) -> Result<Reply> {
    match cmd {
        BfCmd::Info { function: s, max_rank } => {
            let f = function(&s)?;
            let anf = Anf::of(&f);
            let clones = CloneId::instantiated(max_rank);
            let memberships: Vec<(CloneId, bool)> =
                clones.iter().map(|&c| Ok((c, member(&f, c)?))).collect::<Result<_>>()?;
            let mut text = String::new();
            let _ = writeln!(text, "function {f}");
            let _ = writeln!(text, "arity {}", f.arity());
            let _ = writeln!(text, "true points {} of {}", f.count_true(), 1u64 << f.arity());
            let _ = writeln!(text, "anf {}", anf_text(&anf));
            let _ = writeln!(text, "degree {}", anf.degree());
            let _ = writeln!(text, "monotone {}", bool_word(f.is_monotone()));
            let _ = writeln!(text, "self-dual {}", bool_word(f.is_self_dual()));
            let _ = writeln!(text, "reflexive {}", bool_word(f.is_reflexive()));
            let _ = writeln!(text, "essential variables {:?}", f.essential_variables());
            for (c, m) in &memberships {
                let _ = writeln!(text, "{c} {}", bool_word(*m));
            }
            let members: Map<String, Value> = memberships.iter().map(|(c, m)| (c.to_string(), json!(m))).collect();
            Ok(Reply::new(
                text,
                json!({
                    "command": "bf info",
                    "function": f.to_string(),
                    "arity": f.arity(),
                    "true_points": f.count_true(),
                    "anf": anf.monomials(),
                    "degree": anf.degree(),
                    "monotone": f.is_monotone(),
                    "self_dual": f.is_self_dual(),
                    "reflexive": f.is_reflexive(),
                    "essential_variables": f.essential_variables(),
                    "members": members,
                }),
            ))
        }
        BfCmd::Compose { function: s, args } => {
            let f = function(&s)?;
            let gs: Vec<BooleanFunction> = args.iter().map(|a| function(a)).collect::<Result<_>>()?;
            Ok(literal_reply(&f.compose(&gs)?))
        }
        BfCmd::Dual { function: s, inner, outer } => {
            let f = function(&s)?;
            let g = match (inner, outer) {
                (true, _) => f.inner_negation(),
                (_, true) => f.outer_negation(),
                _ => f.dual(),
            };
            Ok(literal_reply(&g))
        }
        BfCmd::Anf { function: s } => {
            let f = function(&s)?;
            let anf = Anf::of(&f);
            Ok(Reply::new(
                anf_text(&anf),
                json!({ "function": f.to_string(), "anf": anf.monomials(), "degree": anf.degree() }),
            ))
        }
    }
}

pub(crate) fn clone(cmd: CloneCmd) -> Result<Reply> {
    match cmd {
        CloneCmd::List { max_rank } => {
            if max_rank < 2 {
                return Err(Error::InvalidRank(max_rank));
            }
            let names: Vec<String> = CloneId::instantiated(max_rank).iter().map(ToString::to_string).collect();
            Ok(Reply::new(names.join("\n"), json!({ "clones": names })))
        }
        CloneCmd::Member { clone, function: s } => {
            let (c, f) = (clone_id(&clone)?, function(&s)?);
            let m = member(&f, c)?;
            Ok(Reply::new(bool_word(m), json!({ "clone": c, "function": f, "member": m })))
        }
        CloneCmd::Enumerate { clone, arity } => {
            let c = clone_id(&clone)?;
            let fs: Vec<String> = enumerate(c, arity)?.iter().map(ToString::to_string).collect();
            Ok(Reply::new(fs.join("\n"), json!({ "clone": c, "arity": arity, "size": fs.len(), "functions": fs })))
        }
        CloneCmd::Leq { lower, upper } => {
            let (a, b) = (clone_id(&lower)?, clone_id(&upper)?);
            let r = leq(a, b)?;
            Ok(Reply::new(bool_word(r), json!({ "lower": a, "upper": b, "leq": r })))
        }
        CloneCmd::Dual { clone } => {
            let c = clone_id(&clone)?;
            c.validate()?;
            let d = dual_clone(c);
            Ok(Reply::new(d.to_string(), json!({ "clone": c, "dual": d })))
        }
        CloneCmd::Generators { clone } => {
            let c = clone_id(&clone)?;
            let gs: Vec<String> = generators(c)?.iter().map(ToString::to_string).collect();
            Ok(Reply::new(gs.join("\n"), json!({ "clone": c, "generators": gs })))
        }
        CloneCmd::Closure { generators: gens, cap } => {
            let gs: Vec<BooleanFunction> = gens.iter().map(|g| function(g)).collect::<Result<_>>()?;
            let class = clone_closure(&gs, cap)?;
            Ok(class_reply(&class, Map::new()))
        }
        CloneCmd::Edges { max_rank } => {
            if max_rank < 2 {
                return Err(Error::InvalidRank(max_rank));
            }
            let edges = covering_edges(max_rank);
            let text: Vec<String> = edges.iter().map(|(a, b)| format!("{a} < {b}")).collect();
            let pairs: Vec<[String; 2]> = edges.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
            Ok(Reply::new(text.join("\n"), json!({ "edges": pairs })))
        }
    }
}

fn pair(p: &PairArgs) -> Result<(CloneId, CloneId)> {
    let (a, b) = (clone_id(&p.source)?, clone_id(&p.target)?);
    a.validate()?;
    b.validate()?;
    Ok((a, b))
}

fn left_step(s: &str) -> Result<LeftStep> {
    if s == "exact" {
        return Ok(LeftStep::Exact);
    }
    s.strip_prefix("enumerate:")
        .and_then(|k| k.parse().ok())
        .map(|max_arity| LeftStep::Enumerate { max_arity })
        .ok_or_else(|| Error::InvalidParameter(format!("--left must be `exact` or `enumerate:K`, got `{s}`")))
}

pub(crate) fn clonoid(cmd: ClonoidCmd) -> Result<Reply> {
    match cmd {
        ClonoidCmd::Gen { pair: p, class, left } => {
            let (c1, c2) = pair(&p)?;
            let f = load_class(&class)?;
            let options = GenOptions { left: left_step(&left)?, ..GenOptions::new(class.cap) };
            let g = gen_clonoid(&f, c1, c2, options)?;
            let mut extra = Map::new();
            extra.insert("source".into(), json!(c1));
            extra.insert("target".into(), json!(c2));
            extra.insert("exact".into(), json!(g.exact));
            Ok(class_reply(&g.class, extra))
        }
        ClonoidCmd::Stable { pair: p, class } => {
            let (c1, c2) = pair(&p)?;
            let k = load_class(&class)?;
            let (r, l) = (right_stable(&k, c1)?, left_stable(&k, c2)?);
            let both = is_clonoid(&k, c1, c2)?;
            let text = format!("right {}\nleft {}\nclonoid {}", bool_word(r), bool_word(l), bool_word(both));
            Ok(Reply::new(
                text,
                json!({ "source": c1, "target": c2, "cap": class.cap, "right_stable": r, "left_stable": l, "clonoid": both }),
            ))
        }
        ClonoidCmd::MeetClosure { files, cap } => {
            let classes: Vec<FunctionClass> = files.iter().map(|f| read_class(f, cap)).collect::<Result<_>>()?;
            let closed = meet_closure(&classes)?;
            let mut text = String::new();
            for (i, c) in closed.iter().enumerate() {
                let _ = writeln!(text, "# class {} ({} functions)", i + 1, c.len());
                text.push_str(&c.to_text());
            }
            let list: Vec<Vec<String>> = closed.iter().map(FunctionClass::literals).collect();
            Ok(Reply::new(text, json!({ "cap": cap, "classes": list })))
        }
        ClonoidCmd::Compose { outer, inner, cap } => {
            let (f, g) = (read_class(&outer, cap)?, read_class(&inner, cap)?);
            Ok(class_reply(&class_compose(&f, &g)?, Map::new()))
        }
        ClonoidCmd::MinorClosure { class } => {
            let k = load_class(&class)?;
            Ok(class_reply(&minor_closure(&k, class.cap)?, Map::new()))
        }
        ClonoidCmd::Predicate { name, cap } => {
            let p: Predicate = name.parse()?;
            let mut extra = Map::new();
            extra.insert("predicate".into(), json!(p.to_string()));
            Ok(class_reply(&predicate_class(p, cap)?, extra))
        }
    }
}

pub(crate) fn gf2(cmd: Gf2Cmd) -> Result<Reply> {
    match cmd {
        Gf2Cmd::Codim { set } => {
            let f = function(&set)?;
            let d = codim_set(&support(&f))?;
            Ok(Reply::new(d.to_string(), json!({ "set": f, "codim": d })))
        }
        Gf2Cmd::Icodim { set } => {
            let f = function(&set)?;
            let d = icodim_set(&support(&f))?;
            Ok(Reply::new(d.to_string(), json!({ "set": f, "icodim": d })))
        }
        Gf2Cmd::Subspaces { n } => {
            let subs = subspaces(n)?;
            let mut text = format!("{} subspaces of GF(2)^{n}\n", subs.len());
            let mut list = Vec::with_capacity(subs.len());
            for w in subs {
                let basis: Vec<String> = w.basis().iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "dim {}: {}", w.dim(), if basis.is_empty() { "0".into() } else { basis.join(" ") });
                list.push(json!({ "dim": w.dim(), "basis": basis }));
            }
            Ok(Reply::new(text, json!({ "n": n, "count": subs.len(), "subspaces": list })))
        }
        Gf2Cmd::Icd { set, d } => {
            let f = function(&set)?;
            let r = in_icd(&f, d)?;
            Ok(Reply::new(bool_word(r), json!({ "set": f, "d": d, "member": r })))
        }
        Gf2Cmd::Aff { set } => {
            let f = function(&set)?;
            let r = in_aff(&f)?;
            Ok(Reply::new(bool_word(r), json!({ "set": f, "affine": r })))
        }
        Gf2Cmd::Preimage { set, columns, offset } => {
            let f = function(&set)?;
            let cols: Vec<BitTuple> = columns.iter().map(|c| bit_tuple(c)).collect::<Result<_>>()?;
            let map = clonoid_core::AffineMap::from_columns(&cols, bit_tuple(&offset)?)?;
            let p = preimage(&map, &support(&f))?;
            Ok(literal_reply(p.chi()))
        }
    }
}

pub(crate) fn cardinality(p: &PairArgs) -> Result<Reply> {
    let (c1, c2) = pair(p)?;
    let v = classify_cardinality(c1, c2)?;
    let cell = table_cell(c1, c2)?;
    Ok(Reply::new(
        format!("{} (cell {})\n{}", v.kind, cell.code(), v.justification),
        json!({ "source": c1, "target": c2, "verdict": v }),
    ))
}
