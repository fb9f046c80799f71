//! Acceptance checks, one line per criterion. All comparisons are exact
//! element or string equality; time limits are wall-clock bounds.
//!
//! Runs with `harness = false` and exits non-zero if any check fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use manymodal::semantics::{evaluate_reference, Compiled, Evaluator};
use manymodal::twist::{build_twist, NoncVariant, TwistStructure};
use manymodal::{
    enumerate_formulas, Direction, Elem, EvalOptions, Filter, FiniteLattice, Formula, Frame,
    LatticeBuilder, NegationMode, Structure, SubUniverse, Valuation, World,
};
use manymodal_cli::{load_document, Registry};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/paper")
        .join(name)
}

const CORPUS: [&str; 9] = [
    "fig2.json",
    "k_failure.json",
    "naw.json",
    "nec_though_false.json",
    "il_cl.json",
    "lp_cl.json",
    "exlp.json",
    "twist_frames.json",
    "bisim.json",
];

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_manymodal"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        stderr: String::from_utf8_lossy(&out.stderr).trim_end().to_string(),
    }
}

/// Runs a CLI query and requires exit 0 with exactly `want` on stdout.
fn answer(file: &str, args: &[&str], want: &str) -> Result<(), String> {
    let path = corpus(file);
    let mut argv = vec!["--json", args[0], path.to_str().unwrap()];
    argv.extend(&args[1..]);
    argv.extend(["--expect", want]);
    let r = cli(&argv);
    let got = serde_json::from_str::<serde_json::Value>(&r.stdout)
        .ok()
        .and_then(|v| v["answer"].as_str().map(str::to_string))
        .unwrap_or_default();
    if r.code == 0 && got == want {
        Ok(())
    } else {
        Err(format!(
            "`{}` gave `{got}` (exit {}): {}",
            args.join(" "),
            r.code,
            r.stderr
        ))
    }
}

fn registry(file: &str) -> Result<Registry, String> {
    load_document(corpus(file)).map_err(|e| e.to_string())
}

fn elem_in(r: &Registry, model: &str, name: &str) -> Result<Elem, String> {
    let m = r.model(model).map_err(|e| e.to_string())?;
    m.base().elem(name).map_err(|e| e.to_string())
}

fn c1() -> Check {
    answer("fig2.json", &["eval", "--model", "M", "--world", "w1", "--formula", "[]p"], "x")?;
    Ok("[]p at w1 = x".into())
}

fn c2() -> Check {
    answer("k_failure.json", &["eval", "--world", "w", "--formula", "[](p -> q)"], "1")?;
    answer("k_failure.json", &["eval", "--world", "w", "--formula", "[]p -> []q"], "b")?;
    answer(
        "k_failure.json",
        &["check", "--world", "w", "--formula", "[](p -> q) -> ([]p -> []q)"],
        "false",
    )?;
    Ok("[](p->q) = 1, []p->[]q = b, K fails at w under {1}".into())
}

fn c3() -> Check {
    let f = "naw.json";
    answer(f, &["check", "--world", "w", "--formula", "a"], "true")?;
    answer(f, &["check", "--world", "w'", "--formula", "a"], "true")?;
    answer(f, &["check", "--world", "w'", "--formula", "~a"], "false")?;
    answer(f, &["eval", "--world", "w", "--formula", "[]a"], "0")?;
    answer(f, &["check", "--world", "w", "--formula", "[]a"], "false")?;
    answer(f, &["eval", "--world", "w", "--formula", "<>a"], "1")?;
    Ok("w, w' satisfy a; w' fails ~a; []a = 0 at w; <>a = 1 at w".into())
}

fn c4() -> Check {
    let f = "nec_though_false.json";
    answer(f, &["check", "--world", "w'", "--formula", "a"], "false")?;
    answer(f, &["eval", "--world", "w", "--formula", "[]a"], "a")?;
    let r = registry(f)?;
    let m = r.model("M").map_err(|e| e.to_string())?;
    let filter: Vec<&str> = m.frame().filter().members().iter().map(|&x| m.base().name_of(x)).collect();
    let a = elem_in(&r, "M", "a")?;
    if filter.len() != 2 || !filter.contains(&"1") || !m.frame().filter().contains(a) {
        return Err(format!("filter is {filter:?}, expected {{1, a}}"));
    }
    Ok("w' fails a, []a = a at w, a in F = {1, a}".into())
}

fn c5() -> Check {
    let f = "il_cl.json";
    answer(f, &["eval", "--model", "M", "--world", "w", "--formula", "[](a | ~a)"], "0")?;
    answer(f, &["eval", "--model", "M0", "--world", "w", "--formula", "[](a | ~a)"], "0")?;
    let r = registry(f)?;
    let neg = |l: &str| -> Result<String, String> {
        let l = r.lattice(l).map_err(|e| e.to_string())?;
        let h = l.elem("1/2").map_err(|e| e.to_string())?;
        Ok(l.name_of(l.complement(h).map_err(|e| e.to_string())?).to_string())
    };
    if (neg("IL")?, neg("IL0")?) != ("1/2".to_string(), "0".to_string()) {
        return Err("the two readings of -(1/2) are not 1/2 and 0".into());
    }
    Ok("[](a|~a) = 0 at w with -(1/2) = 1/2 and with -(1/2) = 0".into())
}

fn c6() -> Check {
    let f = "lp_cl.json";
    answer(f, &["check", "--model", "M", "--world", "w'", "--formula", "a"], "true")?;
    answer(f, &["check", "--model", "M", "--world", "w'", "--formula", "~a"], "true")?;
    answer(f, &["eval", "--model", "M", "--world", "w", "--formula", "[]a"], "{F}")?;
    answer(f, &["eval", "--model", "M'", "--world", "w", "--formula", "[](a & ~a)"], "{V,F}")?;
    answer(f, &["check", "--model", "M'", "--world", "w", "--formula", "[](a & ~a)"], "true")?;
    let r = registry(f)?;
    let m = r.model("M").map_err(|e| e.to_string())?;
    if m.base().name_of(m.base().bottom()) != "{F}" {
        return Err("{F} is not the bottom of LP".into());
    }
    let cl2 = r.subuniverse("CL'").map_err(|e| e.to_string())?;
    if m.base().name_of(cl2.top()) != "{V,F}" {
        return Err("{V,F} is not the top of CL'".into());
    }
    Ok("[]a = {F} on CL; [](a & ~a) = {V,F} = top of CL', satisfied".into())
}

/// The four-element Boolean algebra as 2-bit masks: 0, a, b, 1.
const B: [&str; 4] = ["0", "a", "b", "1"];

fn diamond_twist() -> TwistStructure {
    let b = LatticeBuilder::new("B")
        .elements(B)
        .order([("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
        .complements([("0", "1"), ("1", "0"), ("a", "b"), ("b", "a")])
        .build()
        .unwrap();
    build_twist("T", Arc::new(b)).unwrap()
}

/// Twist subsets as mask pairs, computed without the library.
fn oracle_subset(kind: &str) -> Vec<(u8, u8)> {
    let all = (0..4u8).flat_map(|x| (0..4u8).map(move |y| (x, y)));
    match kind {
        "T_B" => all.filter(|&(x, y)| x | y == 3 && x & y == 0).collect(),
        _ => {
            let z = B.iter().position(|&s| s == kind).unwrap() as u8;
            all.filter(|&(x, y)| (x | y) & z == z).collect()
        }
    }
}

/// `S1 >=Cl S2` by direct mask arithmetic. `product` compares a.b with c.d
/// instead of c+d.
fn oracle_geq(s1: &[(u8, u8)], s2: &[(u8, u8)], product: bool) -> bool {
    s1.iter().all(|&(x, y)| {
        s2.iter().any(|&(z, w)| {
            let exm = (z | w) & (x | y) == (z | w);
            let rhs = if product { z & w } else { z | w };
            let nonc = (x & y) & rhs == (x & y);
            exm && nonc
        })
    })
}

fn c7() -> Check {
    let t = diamond_twist();
    let names = ["T_B", "1", "a", "b", "0"];
    let lib = |k: &str| {
        let kind = if k == "T_B" { "boolean".to_string() } else { format!("atleast:{k}") };
        t.subset_members(&kind.parse().unwrap()).unwrap()
    };
    let to_masks = |xs: &[Elem]| -> Vec<(u8, u8)> {
        let m = |e| B.iter().position(|&s| s == t.base().name_of(e)).unwrap() as u8;
        let mut v: Vec<(u8, u8)> = xs.iter().map(|&x| t.pair(x)).map(|(p, q)| (m(p), m(q))).collect();
        v.sort_unstable();
        v
    };
    for (variant, product) in [(NoncVariant::Sum, false), (NoncVariant::Product, true)] {
        for x in names {
            let mut o = oracle_subset(x);
            o.sort_unstable();
            if to_masks(&lib(x)) != o {
                return Err(format!("subset {x} differs from the mask model"));
            }
            for y in names {
                let l = t.geq_cl(&lib(x), &lib(y), variant);
                if l != oracle_geq(&oracle_subset(x), &oracle_subset(y), product) {
                    return Err(format!("{x} >=Cl {y} ({variant}) differs from the oracle"));
                }
            }
        }
        let geq = |x: &str, y: &str| t.geq_cl(&lib(x), &lib(y), variant);
        let chain = [("T_B", "1"), ("1", "a"), ("a", "0"), ("1", "b"), ("b", "0")];
        for (x, y) in chain {
            if !geq(x, y) {
                return Err(format!("{x} >=Cl {y} fails under {variant}"));
            }
        }
        if geq("a", "b") || geq("b", "a") {
            return Err(format!("T(a) and T(b) compare under {variant}"));
        }
    }
    Ok("chain holds and T(a), T(b) incomparable under sum and product; matches mask oracle".into())
}

const TR: [(&str, &str); 9] = [
    ("1", "0"),
    ("1", "a"),
    ("1", "b"),
    ("a", "0"),
    ("b", "0"),
    ("a", "a"),
    ("1", "1"),
    ("b", "b"),
    ("0", "0"),
];

fn c8() -> Check {
    let t = diamond_twist();
    let c = t.carrier();
    let tr = Filter::new(c, TR.iter().map(|(x, y)| t.elem_named(x, y).unwrap())).unwrap();
    let mut n = 0;
    for v in c.elements() {
        let lub = c.join(v, c.complement(v).map_err(|e| e.to_string())?);
        if !tr.contains(lub) {
            return Err(format!("lub({0}, ~{0}) = {1} is not in Tr", c.name_of(v), c.name_of(lub)));
        }
        n += 1;
    }
    if n != 16 {
        return Err(format!("carrier has {n} values"));
    }
    Ok("lub(v, ~v) in Tr for all 16 values".into())
}

fn class_check(args: &[&str], limit: Duration) -> Result<(String, Duration), String> {
    let path = corpus("twist_frames.json");
    let mut argv = vec!["class-check", path.to_str().unwrap()];
    argv.extend(args);
    let start = Instant::now();
    let r = cli(&argv);
    let took = start.elapsed();
    if r.code != 0 {
        return Err(format!("exit {}: {}", r.code, r.stderr));
    }
    if took > limit {
        return Err(format!("took {took:?}"));
    }
    Ok((r.stdout, took))
}

fn c9_1() -> Check {
    let (out, took) = class_check(
        &["--class", "inc", "--max-worlds", "2", "--formula", "[](p | ~p)"],
        Duration::from_secs(60),
    )?;
    if out.starts_with("no countermodel") {
        Ok(format!("no countermodel ({took:.1?})"))
    } else {
        Err(format!(
            "a countermodel exists: {}",
            out.lines().collect::<Vec<_>>().join(" | ")
        ))
    }
}

fn c9_2() -> Check {
    let (out, _) = class_check(
        &["--class", "dec", "--max-worlds", "2", "--formula", "[](p | ~p)"],
        Duration::from_secs(60),
    )?;
    let value = out
        .lines()
        .next()
        .and_then(|l| l.rsplit(' ').next())
        .unwrap_or_default()
        .to_string();
    let tr = TR.iter().any(|(x, y)| format!("({x},{y})") == value);
    if out.starts_with("countermodel") && value == "(a,1)" && !tr {
        Ok("countermodel with boxed value (a,1), not in Tr".into())
    } else {
        Err(format!(
            "reported boxed value {value} (in Tr: {tr}), expected (a,1): {}",
            out.lines().collect::<Vec<_>>().join(" | ")
        ))
    }
}

fn c9_3() -> Check {
    let (out, took) = class_check(
        &[
            "--class",
            "dec",
            "--serial",
            "--max-worlds",
            "2",
            "--formula",
            "<>([](p|~p) | ~[](p|~p))",
        ],
        Duration::from_secs(60),
    )?;
    if out.starts_with("no countermodel") {
        Ok(format!("{out} ({took:.1?})"))
    } else {
        Err(out)
    }
}

fn c10() -> Check {
    let f = "bisim.json";
    answer(f, &["bisim", "--left", "M1", "--right", "M2"], "{(w,w'), (v,v1'), (v,v2')}")?;
    let start = Instant::now();
    answer(f, &["bisim-verify", "--left", "M1", "--right", "M2", "--max-size", "6"], "0")?;
    let took = start.elapsed();
    if took > Duration::from_secs(10) {
        return Err(format!("bisim-verify took {took:?}"));
    }
    Ok(format!("bisimulation {{(w,w'),(v,v1'),(v,v2')}}; 0 disagreements up to size 6 ({took:.1?})"))
}

/// Two-valued Kripke semantics, written independently of the library.
fn classical(f: &Formula, w: usize, succ: &[Vec<usize>], val: &dyn Fn(usize, &str) -> bool) -> bool {
    match f {
        Formula::Atom(p) => val(w, p),
        Formula::Not(g) => !classical(g, w, succ, val),
        Formula::And(g, h) => classical(g, w, succ, val) && classical(h, w, succ, val),
        Formula::Or(g, h) => classical(g, w, succ, val) || classical(h, w, succ, val),
        Formula::Implies(g, h) => !classical(g, w, succ, val) || classical(h, w, succ, val),
        Formula::Box(g) => succ[w].iter().all(|&u| classical(g, u, succ, val)),
        Formula::Diamond(g) => succ[w].iter().any(|&u| classical(g, u, succ, val)),
    }
}

fn c11() -> Check {
    let start = Instant::now();
    let two = Arc::new(
        LatticeBuilder::new("2")
            .elements(["0", "1"])
            .le("0", "1")
            .complements([("0", "1"), ("1", "0")])
            .build()
            .unwrap(),
    );
    let u = Arc::new(SubUniverse::full("2", Arc::clone(&two), NegationMode::Rigid).unwrap());
    let (zero, one) = (two.elem("0").unwrap(), two.elem("1").unwrap());
    let filter = Filter::new(&two, [one]).unwrap();
    let mut models = 0u64;
    let mut checks = 0u64;
    for atoms in [&["p"][..], &["p", "q"][..]] {
        let formulas = enumerate_formulas(atoms, 5);
        let compiled = Compiled::new(&formulas);
        for n in 1..=3usize {
            let worlds: Vec<World> = (0..n).map(|i| World::new(format!("w{i}"), Arc::clone(&u))).collect();
            for mask in 0u32..(1 << (n * n)) {
                let edges: Vec<(usize, usize)> = (0..n * n)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| (b / n, b % n))
                    .collect();
                let mut succ = vec![Vec::new(); n];
                for &(a, b) in &edges {
                    succ[a].push(b);
                }
                let frame = Frame::new("K", Arc::clone(&two), worlds.clone(), edges, filter.clone())
                    .map_err(|e| e.to_string())?;
                let k = atoms.len();
                for bits in 0u32..(1 << (n * k)) {
                    let truth = |w: usize, p: &str| {
                        let a = atoms.iter().position(|&x| x == p).unwrap();
                        bits >> (w * k + a) & 1 == 1
                    };
                    let mut val = Valuation::new(n, atoms.iter().copied());
                    for w in 0..n {
                        for p in atoms.iter() {
                            val.set(w, p, if truth(w, p) { one } else { zero });
                        }
                    }
                    let mut ev = Evaluator::new(&frame, &val, &compiled, EvalOptions::default());
                    for (i, f) in formulas.iter().enumerate() {
                        for w in 0..n {
                            let v = ev.eval(w, compiled.root(i)).map_err(|e| e.to_string())?;
                            if (v == one) != classical(f, w, &succ, &truth) {
                                return Err(format!("{f} at w{w} differs (relation {mask:b}, valuation {bits:b})"));
                            }
                            checks += 1;
                        }
                    }
                    models += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{models} models, {checks} world/formula checks agree ({took:.1?})"))
}

fn lattice_laws(l: &FiniteLattice) -> Result<(), String> {
    let xs: Vec<Elem> = l.elements().collect();
    let n = |x| l.name_of(x).to_string();
    for &x in &xs {
        if !l.leq(x, x) || l.join(x, x) != x || l.meet(x, x) != x {
            return Err(format!("{}: idempotence/reflexivity at {}", l.name(), n(x)));
        }
        if !l.leq(l.bottom(), x) || !l.leq(x, l.top()) {
            return Err(format!("{}: bounds at {}", l.name(), n(x)));
        }
        for &y in &xs {
            // Least upper bound and greatest lower bound from the order alone.
            let ubs: Vec<Elem> = xs.iter().copied().filter(|&z| l.leq(x, z) && l.leq(y, z)).collect();
            let lbs: Vec<Elem> = xs.iter().copied().filter(|&z| l.leq(z, x) && l.leq(z, y)).collect();
            let lub = ubs.iter().copied().find(|&z| ubs.iter().all(|&u| l.leq(z, u)));
            let glb = lbs.iter().copied().find(|&z| lbs.iter().all(|&u| l.leq(u, z)));
            if lub != Some(l.join(x, y)) || glb != Some(l.meet(x, y)) {
                return Err(format!("{}: join/meet of {} and {}", l.name(), n(x), n(y)));
            }
            if l.join(x, y) != l.join(y, x)
                || l.meet(x, y) != l.meet(y, x)
                || l.join(x, l.meet(x, y)) != x
                || l.meet(x, l.join(x, y)) != x
                || (l.leq(x, y) && l.leq(y, x) && x != y)
            {
                return Err(format!("{}: laws at {}, {}", l.name(), n(x), n(y)));
            }
            for &z in &xs {
                if l.join(l.join(x, y), z) != l.join(x, l.join(y, z))
                    || l.meet(l.meet(x, y), z) != l.meet(x, l.meet(y, z))
                    || (l.leq(x, y) && l.leq(y, z) && !l.leq(x, z))
                {
                    return Err(format!("{}: associativity/transitivity", l.name()));
                }
            }
        }
    }
    Ok(())
}

fn interpretation_laws(u: &SubUniverse) -> Result<(), String> {
    let l = u.base();
    for dir in [Direction::Down, Direction::Up] {
        for x in l.elements() {
            let i = u.interpret(x, dir);
            if !u.contains(i) || u.interpret(i, dir) != i || (u.contains(x) && i != x) {
                return Err(format!("{} ({dir}): idempotence at {}", u.name(), l.name_of(x)));
            }
            for y in l.elements() {
                if l.leq(x, y) && !l.leq(i, u.interpret(y, dir)) {
                    return Err(format!("{} ({dir}): monotonicity", u.name()));
                }
            }
        }
    }
    Ok(())
}

/// Modal properties under every valuation of `p` on `frame`.
fn modal_properties(frame: &Frame, formulas: &[Formula], counts: &mut (u64, u64)) -> Result<(), String> {
    let n = frame.len();
    let sizes: Vec<usize> = (0..n).map(|w| frame.universe(w).len()).collect();
    let total: usize = sizes.iter().product();
    let extra: Vec<Formula> = formulas
        .iter()
        .flat_map(|f| {
            [
                Formula::diamond(f.clone()),
                Formula::negate(Formula::boxed(Formula::negate(f.clone()))),
                Formula::boxed(f.clone()),
            ]
        })
        .collect();
    let all: Vec<Formula> = formulas.iter().cloned().chain(extra).collect();
    let compiled = Compiled::new(&all);
    for interp in [Direction::Down, Direction::Up] {
        let opts = EvalOptions { interp };
        for code in 0..total {
            let mut val = Valuation::new(n, ["p"]);
            let mut c = code;
            for (w, &s) in sizes.iter().enumerate() {
                val.set(w, "p", frame.universe(w).members()[c % s]);
                c /= s;
            }
            let mut ev = Evaluator::new(frame, &val, &compiled, opts);
            let k = formulas.len();
            for w in 0..n {
                let lw = frame.universe(w);
                for (i, f) in all.iter().enumerate() {
                    let v = ev.eval(w, compiled.root(i)).map_err(|e| e.to_string())?;
                    if !lw.contains(v) {
                        return Err(format!("{}: {f} at {} leaves its universe", frame.name(), frame.worlds()[w].id));
                    }
                    if i < k && v != evaluate_reference(frame, &val, w, f, opts).map_err(|e| e.to_string())? {
                        return Err(format!("{}: {f} differs from the reference evaluator", frame.name()));
                    }
                }
                for (i, f) in formulas.iter().enumerate() {
                    let dia = ev.eval(w, compiled.root(k + 3 * i)).map_err(|e| e.to_string())?;
                    let nbn = ev.eval(w, compiled.root(k + 3 * i + 1)).map_err(|e| e.to_string())?;
                    if dia != nbn {
                        return Err(format!("{}: <>{f} != ~[]~ at {}", frame.name(), frame.worlds()[w].id));
                    }
                    counts.0 += 1;
                    if frame.successors(w).is_empty() {
                        let b = ev.eval(w, compiled.root(k + 3 * i + 2)).map_err(|e| e.to_string())?;
                        if b != lw.top() {
                            return Err(format!("{}: empty box is not the local top", frame.name()));
                        }
                        counts.1 += 1;
                    }
                }
            }
        }
    }
    Ok(())
}

fn c12() -> Check {
    let formulas = enumerate_formulas(&["p"], 4);
    let (mut lattices, mut universes, mut frames) = (0, 0, 0);
    let mut counts = (0u64, 0u64);
    for file in CORPUS {
        let r = registry(file)?;
        for name in r.lattice_names() {
            lattice_laws(r.lattice(name).unwrap())?;
            lattices += 1;
        }
        for name in r.subuniverse_names() {
            let u = r.subuniverse(name).unwrap();
            interpretation_laws(u)?;
            universes += 1;
            let top = Filter::new(u.base(), [u.base().top()]).unwrap();
            for edges in [vec![], vec![(0, 0)]] {
                let f = Frame::new(
                    format!("{file}:{name}"),
                    Arc::clone(u.base()),
                    vec![World::new("w", Arc::clone(u))],
                    edges,
                    top.clone(),
                )
                .map_err(|e| e.to_string())?;
                modal_properties(&f, &formulas, &mut counts)?;
                frames += 1;
            }
        }
        for name in r.model_names() {
            let m: &Structure = r.model(name).unwrap();
            modal_properties(m.frame(), &formulas, &mut counts)?;
            frames += 1;
        }
    }
    Ok(format!(
        "{lattices} lattices, {universes} universes, {frames} frames; {} diamond checks, {} empty boxes",
        counts.0, counts.1
    ))
}

fn main() -> ExitCode {
    let checks: [Criterion; 14] = [
        ("1", "box over three local universes", c1),
        ("2", "K failure", c2),
        ("3", "NAW failure", c3),
        ("4", "necessity though false", c4),
        ("5", "IL/CL excluded middle", c5),
        ("6", "LP/CL", c6),
        ("7", "twist classicality order", c7),
        ("8", "twist excluded-middle tautology", c8),
        ("9.1", "F_inc validates [](p|~p) at bound 2", c9_1),
        ("9.2", "F_dec countermodel with boxed value (a,1)", c9_2),
        ("9.3", "serial F_dec validates <>([](p|~p) | ~[](p|~p)) at bound 2", c9_3),
        ("10", "bisimulation", c10),
        ("11", "classical recovery oracle", c11),
        ("12", "property suites on corpus lattices", c12),
    ];
    let mut failed = 0;
    for (id, title, check) in checks {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS [{id}] {title}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id}] {title}: {why} [{took:.2?}]");
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
