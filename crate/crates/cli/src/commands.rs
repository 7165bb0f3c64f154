//! One function per subcommand.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pathpoly_core::certify::{certify_all, certify_tree, CertifyOptions, TreeCertificate};
use pathpoly_core::oracle::{minimal_hrep, OracleCap};
use pathpoly_core::path_polytope::{
    general_constraints, hrep_general, theorem_constraints, vrep as path_vrep, ConstraintOrigin, LabeledConstraint,
};
use pathpoly_core::polytope::{canonicalize, contains};
use pathpoly_core::tfp::{reconstruct, GluingSpec, Side};
use pathpoly_core::tree::{glue as glue_trees, star_decomposition};
use pathpoly_core::{Error, HRep, LeafEdge, LinearConstraint, RationalVector, Tree};

use crate::cdd::{format_rational, parse_point, write_ext, write_ine, CddMatrix};
use crate::error::CliError;
use crate::report::*;
use crate::{
    CertifyArgs, DecomposeArgs, GlueArgs, HFormat, HrepArgs, MemberArgs, OracleArgs, Output, ReportFormat, VFormat,
    VrepArgs, EXIT_MISMATCH,
};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<Tree, CliError> {
    Tree::parse_auto(&read(path)?).map_err(|e| CliError::from(e).context(&path.display().to_string()))
}

fn emit(text: String, output: Option<&Path>) -> Result<Output, CliError> {
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok(Output { stdout: String::new(), stderr: String::new(), code: 0 })
        }
        None => Ok(Output { stdout: text, stderr: String::new(), code: 0 }),
    }
}

/// `1-2 1-3 ...`
pub fn compact(t: &Tree) -> String {
    t.edges().iter().map(|e| format!("{}-{}", e.a(), e.b())).collect::<Vec<_>>().join(" ")
}

fn pair_label(i: &str, j: &str) -> String {
    format!("{i}<->{j}")
}

pub fn vrep(a: &VrepArgs) -> Result<Output, CliError> {
    let t = read_tree(&a.tree)?;
    let v = path_vrep(&t);
    let pairs = t.leaf_pairs();
    let text = match a.format {
        VFormat::Ext => {
            let labels: Vec<String> = pairs.iter().map(|(i, j)| pair_label(i.as_str(), j.as_str())).collect();
            write_ext(&v, vec!["pathpoly vrep".into(), format!("tree: {}", compact(&t))], &labels)
        }
        VFormat::Json => to_json(&VrepJson {
            edges: edges_json(&t),
            coordinates: t.basis().names().to_vec(),
            vertices: pairs
                .iter()
                .zip(v.vertices())
                .map(|((i, j), p)| VertexJson { pair: [i.to_string(), j.to_string()], point: point_json(p) })
                .collect(),
        }),
    };
    emit(text, a.output.as_deref())
}

fn descriptor_text(o: &ConstraintOrigin) -> String {
    match o {
        ConstraintOrigin::EdgeNonnegative(e) => format!("F {e}"),
        ConstraintOrigin::Star { center, toward } => format!("G center {center} toward {toward}"),
        ConstraintOrigin::LeafSum => "leaf sum".into(),
        ConstraintOrigin::DegreeTwo { node } => format!("degree 2 at {node}"),
        ConstraintOrigin::SingleEdge => "single edge".into(),
    }
}

/// Closed-form rows in canonical order. Rows with the same canonical form
/// are merged and keep every rule that produced them.
struct Described {
    equalities: Vec<(LinearConstraint, Vec<ConstraintOrigin>)>,
    inequalities: Vec<(LinearConstraint, Vec<ConstraintOrigin>)>,
}

fn describe(t: &Tree, labeled: &[LabeledConstraint]) -> Result<Described, CliError> {
    let basis = t.basis();
    let all: Vec<LinearConstraint> = labeled.iter().map(|l| l.constraint.clone()).collect();
    let canon = canonicalize(&HRep::new(basis.clone(), all)?)?;
    let eqs: Vec<LinearConstraint> =
        labeled.iter().filter(|l| l.constraint.is_equality()).map(|l| l.constraint.clone()).collect();

    let mut equalities: Vec<(LinearConstraint, Vec<ConstraintOrigin>)> = Vec::new();
    let mut eq_keys = Vec::new();
    let mut slots: Vec<Option<(LinearConstraint, Vec<ConstraintOrigin>)>> = vec![None; canon.inequalities().len()];
    for l in labeled {
        if l.constraint.is_equality() {
            let key = canonicalize(&HRep::new(basis.clone(), vec![l.constraint.clone()])?)?;
            match eq_keys.iter().position(|k| *k == key) {
                Some(k) => equalities[k].1.push(l.origin.clone()),
                None => {
                    eq_keys.push(key);
                    equalities.push((l.constraint.clone(), vec![l.origin.clone()]));
                }
            }
        } else {
            let mut cons = eqs.clone();
            cons.push(l.constraint.clone());
            let single = canonicalize(&HRep::new(basis.clone(), cons)?)?;
            let Some(k) = canon.inequalities().iter().position(|c| single.inequalities().first() == Some(c)) else {
                continue;
            };
            slots[k].get_or_insert_with(|| (l.constraint.clone(), Vec::new())).1.push(l.origin.clone());
        }
    }
    let inequalities = slots
        .into_iter()
        .zip(canon.inequalities())
        .map(|(slot, c)| slot.unwrap_or_else(|| (c.clone(), Vec::new())))
        .collect();
    Ok(Described { equalities, inequalities })
}

fn with_hint(e: Error) -> CliError {
    match e {
        Error::TooSmall { .. } | Error::HasDegreeTwoInternal(_) => {
            CliError::Precondition(format!("{e}; rerun with --general"))
        }
        other => other.into(),
    }
}

pub fn hrep(a: &HrepArgs) -> Result<Output, CliError> {
    let t = read_tree(&a.tree)?;
    let (labeled, mode) = if a.general {
        (general_constraints(&t), "general")
    } else {
        (theorem_constraints(&t).map_err(with_hint)?, "theorem")
    };
    let d = describe(&t, &labeled)?;
    let basis = t.basis();
    let text = match a.format {
        HFormat::Ine => {
            let mut comments = vec!["pathpoly hrep".into(), format!("tree: {}", compact(&t)), format!("mode: {mode}")];
            let rows = d.equalities.iter().chain(&d.inequalities);
            for (k, (_, origins)) in rows.clone().enumerate() {
                let names: Vec<String> = origins.iter().map(descriptor_text).collect();
                comments.push(format!("row {}: {}", k + 1, names.join("; ")));
            }
            let rows: Vec<LinearConstraint> = rows.map(|(c, _)| c.clone()).collect();
            write_ine(&basis, &rows, comments)
        }
        HFormat::Json => {
            let rows = |rows: &[(LinearConstraint, Vec<ConstraintOrigin>)]| {
                rows.iter()
                    .map(|(c, o)| ConstraintJson::new(c, &basis).with_descriptors(o.iter().map(Into::into).collect()))
                    .collect()
            };
            to_json(&HrepJson {
                edges: edges_json(&t),
                mode,
                coordinates: basis.names().to_vec(),
                equalities: rows(&d.equalities),
                inequalities: rows(&d.inequalities),
            })
        }
    };
    emit(text, a.output.as_deref())
}

/// Verdict of a membership test against a canonical description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Out { violated: LinearConstraint },
    In { tight: Vec<LinearConstraint> },
}

impl Membership {
    pub fn relative_interior(&self) -> bool {
        matches!(self, Membership::In { tight } if tight.is_empty())
    }
}

/// Tests `x` against the path polytope of `t`.
pub fn membership(t: &Tree, x: &RationalVector) -> Result<Membership, CliError> {
    let h = canonicalize(&hrep_general(t))?;
    if let Some(c) = h.first_violated(x)? {
        return Ok(Membership::Out { violated: c.clone() });
    }
    debug_assert!(contains(&h, x)?);
    let tight = h.inequalities().iter().filter(|c| c.is_tight_at(x)).cloned().collect();
    Ok(Membership::In { tight })
}

pub fn member(a: &MemberArgs) -> Result<Output, CliError> {
    let t = read_tree(&a.tree)?;
    let x = parse_point(&read(&a.point)?).map_err(|e| e.context(&a.point.display().to_string()))?;
    let verdict = membership(&t, &x)?;
    let basis = t.basis();
    let text = match a.format {
        ReportFormat::Text => {
            let mut s = String::new();
            match &verdict {
                Membership::Out { violated } => {
                    writeln!(s, "OUT").unwrap();
                    writeln!(s, "violated: {}", violated.display_with(&basis)).unwrap();
                }
                Membership::In { tight } if tight.is_empty() => {
                    writeln!(s, "IN").unwrap();
                    writeln!(s, "relative interior").unwrap();
                }
                Membership::In { tight } => {
                    writeln!(s, "IN").unwrap();
                    writeln!(s, "boundary").unwrap();
                    for c in tight {
                        writeln!(s, "tight: {}", c.display_with(&basis)).unwrap();
                    }
                }
            }
            s
        }
        ReportFormat::Json => {
            let (violated, tight) = match &verdict {
                Membership::Out { violated } => (Some(ConstraintJson::new(violated, &basis)), Vec::new()),
                Membership::In { tight } => (None, tight.iter().map(|c| ConstraintJson::new(c, &basis)).collect()),
            };
            to_json(&MemberJson {
                point: point_json(&x),
                inside: matches!(verdict, Membership::In { .. }),
                relative_interior: verdict.relative_interior(),
                violated,
                tight,
            })
        }
    };
    Ok(Output { stdout: text, stderr: String::new(), code: 0 })
}

fn certificate_table(certs: &[TreeCertificate]) -> String {
    let trees: Vec<String> = certs.iter().map(|c| compact(&c.tree)).collect();
    let w = trees.iter().map(String::len).max().unwrap_or(0).max(4);
    let mut s = String::new();
    writeln!(s, "{:<w$}  {:>6}  {:>3}  {:>3}  {:>6}  status", "tree", "leaves", "|V|", "dim", "facets").unwrap();
    for (c, name) in certs.iter().zip(&trees) {
        let status = if c.passed() { "pass" } else { "FAIL" };
        writeln!(
            s,
            "{name:<w$}  {:>6}  {:>3}  {:>3}  {:>6}  {status}",
            c.tree.leaves().len(),
            c.vertices,
            c.dim,
            c.facets
        )
        .unwrap();
        for k in c.checks.iter().filter(|k| !k.passed) {
            writeln!(s, "  {}: {}", k.name, k.detail.as_deref().unwrap_or("failed")).unwrap();
        }
    }
    let passed = certs.iter().filter(|c| c.passed()).count();
    writeln!(s, "{} trees, {} passed, {} failed", certs.len(), passed, certs.len() - passed).unwrap();
    s
}

pub fn certify(a: &CertifyArgs) -> Result<Output, CliError> {
    let opts = CertifyOptions { cap: OracleCap::from_env()?, inject_fault: a.inject_fault };
    let certs = match (&a.tree, a.all_trees_up_to) {
        (Some(p), None) => vec![certify_tree(&read_tree(p)?, &opts)?],
        (None, Some(e)) => certify_all(e, &opts)?,
        _ => return Err(CliError::Input("give either a tree file or --all-trees-up-to".into())),
    };
    let passed = certs.iter().filter(|c| c.passed()).count();
    let text = match a.format {
        ReportFormat::Text => certificate_table(&certs),
        ReportFormat::Json => to_json(&CertifyJson {
            trees: certs.iter().map(Into::into).collect(),
            total: certs.len(),
            passed,
            failed: certs.len() - passed,
        }),
    };
    let code = if passed == certs.len() { 0 } else { EXIT_MISMATCH };
    Ok(Output { stdout: text, stderr: String::new(), code })
}

fn parse_leaf_edge(t: &Tree, spec: &str) -> Result<LeafEdge, CliError> {
    let (x, y) = spec
        .split_once(',')
        .map(|(x, y)| (x.trim(), y.trim()))
        .filter(|(x, y)| !x.is_empty() && !y.is_empty())
        .ok_or_else(|| CliError::Input(format!("edge {spec:?}: expected two labels as a,b")))?;
    Ok(t.leaf_edge(x, y)?)
}

fn vertex_labels(t: &Tree) -> Vec<String> {
    let mut out: Vec<String> = t.leaf_pairs().iter().map(|(i, j)| pair_label(i.as_str(), j.as_str())).collect();
    out.push("0".into());
    out
}

fn cells(p: &RationalVector) -> String {
    p.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

/// The glued leaf pair of a matched pair: the leaves of both factor paths
/// other than the two glued leaves.
fn glued_pair(left: &str, right: &str, k1: &str, k2: &str) -> String {
    let leaves: BTreeSet<&str> =
        left.split("<->").chain(right.split("<->")).filter(|l| *l != "0" && *l != k1 && *l != k2).collect();
    let v: Vec<&str> = leaves.into_iter().collect();
    pair_label(v[0], v[1])
}

fn trace_text(spec: &GluingSpec) -> Result<String, CliError> {
    let r = reconstruct(spec)?;
    let mut s = String::new();
    let (k1, k2) = (spec.e1.leaf.as_str(), spec.e2.leaf.as_str());
    let factors = [
        (Side::Left, &spec.t1, &spec.e1, &r.left, &r.trace.left_classes),
        (Side::Right, &spec.t2, &spec.e2, &r.right, &r.trace.right_classes),
    ];
    let mut labels = Vec::new();
    for (side, t, e, v, classes) in factors {
        let name = if side == Side::Left { "left" } else { "right" };
        let ls = vertex_labels(t);
        writeln!(s, "# {name} factor: {} glued at {}", compact(t), e.edge()).unwrap();
        writeln!(s, "# {name} coordinates: {}", t.basis().names().join(" ")).unwrap();
        for ((l, p), c) in ls.iter().zip(v.vertices()).zip(classes.iter()) {
            writeln!(s, "# {name} {l} | {} | {c}", cells(p)).unwrap();
        }
        labels.push(ls);
    }
    writeln!(s, "# product coordinates: {}", r.trace.product.basis().names().join(" ")).unwrap();
    writeln!(s, "# glued coordinates: {}", r.glued.basis().names().join(" ")).unwrap();
    writeln!(s, "# pairs: {}", r.trace.pairs.len()).unwrap();
    for (pair, (q, img)) in r.trace.pairs.iter().zip(r.trace.product.vertices().iter().zip(r.image.vertices())) {
        let (l, rt) = (&labels[0][pair.left], &labels[1][pair.right]);
        writeln!(
            s,
            "# pair {} = {l} + {rt} | {} | {} | {}",
            glued_pair(l, rt, k1, k2),
            pair.class,
            cells(q),
            cells(img)
        )
        .unwrap();
    }
    Ok(s)
}

pub fn glue(a: &GlueArgs) -> Result<Output, CliError> {
    let t1 = read_tree(&a.tree1)?;
    let t2 = read_tree(&a.tree2)?;
    let e1 = parse_leaf_edge(&t1, &a.edge1).map_err(|e| e.context("first edge"))?;
    let e2 = parse_leaf_edge(&t2, &a.edge2).map_err(|e| e.context("second edge"))?;
    let (glued, _) = glue_trees(&t1, &e1, &t2, &e2)?;
    let mut text = glued.to_edge_list();
    if a.trace {
        let spec = GluingSpec::new(t1, e1, t2, e2)?;
        text.push_str(&trace_text(&spec)?);
    }
    emit(text, a.output.as_deref())
}

pub fn decompose(a: &DecomposeArgs) -> Result<Output, CliError> {
    let t = read_tree(&a.tree)?;
    let mut s = String::new();
    for (k, piece) in star_decomposition(&t)?.iter().enumerate() {
        writeln!(s, "# star {}: center {}", k + 1, piece.center).unwrap();
        if let Some(g) = &piece.glue {
            writeln!(s, "# glue {} of the assembled tree to {} of this star", g.assembled.edge(), g.star.edge())
                .unwrap();
        }
        s.push_str(&piece.star.to_edge_list());
    }
    emit(s, a.output.as_deref())
}

pub fn oracle(a: &OracleArgs) -> Result<Output, CliError> {
    let m = CddMatrix::parse(&read(&a.ext)?).map_err(|e| e.context(&a.ext.display().to_string()))?;
    let v = m.to_vrep()?;
    let report = minimal_hrep(&v)?;
    let basis = &report.basis;
    let text = match a.format {
        HFormat::Ine => {
            let rows: Vec<LinearConstraint> = report.equalities.iter().chain(&report.facets).cloned().collect();
            let comments = vec![
                "pathpoly oracle".into(),
                format!("input vertices: {}", report.input_vertex_count),
                format!("affine dimension: {}", report.affine_dim),
            ];
            write_ine(basis, &rows, comments)
        }
        HFormat::Json => to_json(&OracleJson {
            coordinates: basis.names().to_vec(),
            input_vertices: report.input_vertex_count,
            dimension: report.affine_dim,
            equalities: report.equalities.iter().map(|c| ConstraintJson::new(c, basis)).collect(),
            facets: report.facets.iter().map(|c| ConstraintJson::new(c, basis)).collect(),
        }),
    };
    let mut out = emit(text, a.output.as_deref())?;
    out.stderr = format!(
        "oracle: facets {}, equalities {}, dimension {}, {:.3?}\n",
        report.facets.len(),
        report.equalities.len(),
        report.affine_dim,
        report.elapsed
    );
    Ok(out)
}
