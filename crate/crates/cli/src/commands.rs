use std::fmt::Write as _;

use abcover::{
    build_fiber_ring, classify, hilbert_numerator, socle_basis, ClassificationReport,
    CombinatorialData, Error, FiberRing, Limits,
};
use serde::Serialize;

use crate::document::{print_document, CoverDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
/// The Gorenstein deciders disagreed: a bug, not bad input.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    Fiber,
    Socle,
    Hilbert,
    Factor,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub table: bool,
    pub limits: Limits,
}

/// Text for standard output and standard error plus the process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => EXIT_LIMIT,
            Error::NotTotallyRamified { .. } => EXIT_INVALID,
            Error::DeciderDisagreement(_) => EXIT_INTERNAL,
        };
        Outcome::fail(code, format!("error: {e}\n"))
    }
}

pub fn run_command(command: Command, doc: &CoverDocument, flags: &Flags) -> Outcome {
    let data = match doc.validate() {
        Ok(d) => d,
        Err(report) => {
            let mut err = String::from("invalid cover data:\n");
            for e in &report.errors {
                let _ = writeln!(err, "  {e}");
            }
            return Outcome::fail(EXIT_INVALID, err);
        }
    };
    let result = match command {
        Command::Validate => Ok(validate_text(&data)),
        Command::Classify => return classify_command(&data, flags),
        Command::Fiber => fiber_text(&data, flags),
        Command::Socle => socle_text(&data, flags),
        Command::Hilbert => hilbert_text(&data, flags),
        Command::Factor => Ok(factor_text(&data)),
    };
    result.map_or_else(Outcome::from_error, Outcome::ok)
}

fn branch_lines(out: &mut String, data: &CombinatorialData) {
    for (i, b) in data.branch().iter().enumerate() {
        let _ = writeln!(
            out,
            "  H_{} = <{}>  order {}  psi = {}",
            i + 1,
            b.generator(),
            b.order(),
            b.character_value()
        );
    }
}

fn validate_text(data: &CombinatorialData) -> String {
    let mut out = format!("valid\ngroup: {} (order {})\n", data.group(), data.group().order());
    if data.is_empty() {
        out.push_str("branch: none (unramified point)\n");
    } else {
        out.push_str("branch:\n");
        branch_lines(&mut out, data);
    }
    out
}

fn classify_command(data: &CombinatorialData, flags: &Flags) -> Outcome {
    let report = match classify(data, &flags.limits) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(e),
    };
    let stdout = if flags.json {
        let mut s = serde_json::to_string_pretty(&JsonReport::from(&report))
            .expect("reports always serialize");
        s.push('\n');
        s
    } else {
        report_text(&report)
    };
    match &report.limit_exceeded {
        Some(e) => Outcome {
            stdout,
            stderr: format!("error: {e}\n"),
            code: EXIT_LIMIT,
        },
        None => Outcome::ok(stdout),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("skipped".to_string(), T::to_string)
}

pub fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let gens: Vec<String> = r.kernel.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, "locally simple:   {}", r.locally_simple);
    let _ = writeln!(out, "totally ramified: {} (etale index {})", r.totally_ramified, r.etale_index);
    let _ = writeln!(
        out,
        "kernel:           order {}, generators [{}], min support {}",
        r.kernel.order,
        gens.join(", "),
        r.kernel.min_support.map_or("-".to_string(), |s| s.to_string())
    );
    let _ = writeln!(
        out,
        "gorenstein:       {}{}",
        r.gorenstein,
        r.certificate.as_ref().map_or(String::new(), |c| format!(" (certificate {c})"))
    );
    let c = &r.cross_checks;
    let _ = writeln!(
        out,
        "cross-checks:     lift={} watanabe={} socle={} palindromic={}",
        c.lift,
        c.watanabe,
        opt(&c.socle),
        opt(&c.palindromic)
    );
    let _ = writeln!(out, "lci:              {} ({})", r.lci, r.lci_reason.code());
    let _ = writeln!(out, "smooth:           {}", r.smooth);
    for a in &r.assumptions {
        let _ = writeln!(out, "assumption:       {a}");
    }
    let l = &r.limits;
    let _ = writeln!(
        out,
        "limits:           enumeration={} fiber-order={} max-degree={}",
        l.enumeration, l.fiber_order, l.max_degree
    );
    out
}

#[derive(Serialize)]
pub struct JsonReport {
    pub locally_simple: bool,
    pub totally_ramified: bool,
    pub etale_index: u64,
    pub kernel: JsonKernel,
    pub gorenstein: bool,
    pub certificate: Option<Vec<u64>>,
    pub cross_checks: JsonCrossChecks,
    pub lci: &'static str,
    pub lci_reason: &'static str,
    pub smooth: &'static str,
    pub assumptions: Vec<String>,
}

#[derive(Serialize)]
pub struct JsonKernel {
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
    pub min_support: Option<usize>,
}

#[derive(Serialize)]
pub struct JsonCrossChecks {
    pub lift: bool,
    pub watanabe: bool,
    pub socle: Option<bool>,
    pub palindromic: Option<bool>,
}

impl From<&ClassificationReport> for JsonReport {
    fn from(r: &ClassificationReport) -> Self {
        JsonReport {
            locally_simple: r.locally_simple,
            totally_ramified: r.totally_ramified,
            etale_index: r.etale_index,
            kernel: JsonKernel {
                order: r.kernel.order,
                generators: r.kernel.generators.iter().map(|g| g.residues().to_vec()).collect(),
                min_support: r.kernel.min_support,
            },
            gorenstein: r.gorenstein,
            certificate: r.certificate.as_ref().map(|c| c.residues().to_vec()),
            cross_checks: JsonCrossChecks {
                lift: r.cross_checks.lift,
                watanabe: r.cross_checks.watanabe,
                socle: r.cross_checks.socle,
                palindromic: r.cross_checks.palindromic,
            },
            lci: r.lci.as_str(),
            lci_reason: r.lci_reason.code(),
            smooth: r.smooth.as_str(),
            assumptions: r.assumptions.clone(),
        }
    }
}

/// The fiber ring lives on the totally ramified part; say so when that
/// differs from the input.
fn ramified_part(data: &CombinatorialData, out: &mut String) -> CombinatorialData {
    let f = data.ramification_factorization();
    if f.etale_index > 1 {
        let _ = writeln!(
            out,
            "note: etale index {}; using the inertia subgroup M = {}",
            f.etale_index,
            f.restricted.group()
        );
    }
    f.restricted
}

fn alpha_string(alpha: &[u64]) -> String {
    let parts: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fiber_text(data: &CombinatorialData, flags: &Flags) -> Result<String, Error> {
    let mut out = String::new();
    let restricted = ramified_part(data, &mut out);
    let ring = build_fiber_ring(&restricted, &flags.limits)?;
    let _ = writeln!(out, "fiber ring: dimension {}", ring.dimension());
    out.push_str("basis (index, character, alpha, degree):\n");
    for (i, chi) in ring.characters().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {i:>3}  w{chi}  alpha {}  degree {}",
            alpha_string(ring.alpha_at(i)),
            ring.degree_at(i)
        );
    }
    if flags.table {
        product_table(&mut out, &ring);
    }
    Ok(out)
}

fn product_table(out: &mut String, ring: &FiberRing) {
    let n = ring.dimension();
    let width = n.saturating_sub(1).to_string().len().max(1);
    out.push_str("products (row * column; '.' is zero):\n");
    let _ = write!(out, "{:>w$} |", "", w = width);
    for j in 0..n {
        let _ = write!(out, " {j:>width$}");
    }
    out.push('\n');
    for i in 0..n {
        let _ = write!(out, "{i:>width$} |");
        for j in 0..n {
            match ring.product_at(i, j) {
                Some(k) => {
                    let _ = write!(out, " {k:>width$}");
                }
                None => {
                    let _ = write!(out, " {:>width$}", ".");
                }
            }
        }
        out.push('\n');
    }
}

fn socle_text(data: &CombinatorialData, flags: &Flags) -> Result<String, Error> {
    let mut out = String::new();
    let restricted = ramified_part(data, &mut out);
    let ring = build_fiber_ring(&restricted, &flags.limits)?;
    let socle = socle_basis(&ring);
    let basis: Vec<String> = socle.iter().map(|c| format!("w{c}")).collect();
    let _ = writeln!(out, "socle dimension: {}", socle.len());
    let _ = writeln!(out, "basis: {}", basis.join(", "));
    let _ = writeln!(out, "gorenstein: {}", socle.len() == 1);
    Ok(out)
}

fn hilbert_text(data: &CombinatorialData, flags: &Flags) -> Result<String, Error> {
    let mut out = String::new();
    let restricted = ramified_part(data, &mut out);
    let q = hilbert_numerator(&restricted, &flags.limits)?;
    let orders: Vec<String> = data.orders().iter().map(|d| d.to_string()).collect();
    let series: Vec<String> = q
        .series(&data.orders(), flags.limits.max_degree as usize)
        .iter()
        .map(|c| c.to_string())
        .collect();
    let _ = writeln!(out, "numerator: {q}");
    let _ = writeln!(out, "palindromic: {}", q.is_palindromic());
    let _ = writeln!(out, "denominator orders: [{}]", orders.join(", "));
    let _ = writeln!(
        out,
        "series up to degree {}: {}",
        flags.limits.max_degree,
        series.join(", ")
    );
    Ok(out)
}

fn factor_text(data: &CombinatorialData) -> String {
    let f = data.ramification_factorization();
    let gens: Vec<String> = f.image.generators.iter().map(|g| g.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "inertia subgroup M: order {}, generated by [{}]", f.image.order, gens.join(", "));
    let _ = writeln!(out, "etale index |G/M|: {}", f.etale_index);
    let _ = writeln!(out, "M = {}", f.restricted.group());
    out.push_str("restricted data:\n");
    let _ = writeln!(out, "{}", print_document(&CoverDocument::from_data(&f.restricted)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_input;

    fn z2_cubed() -> CoverDocument {
        CoverDocument::new(
            vec![2, 2, 2],
            vec![
                (vec![1, 0, 0], 1),
                (vec![0, 1, 0], 1),
                (vec![0, 0, 1], 1),
                (vec![1, 1, 1], 1),
            ],
        )
    }

    #[test]
    fn classify_json_fields() {
        let flags = Flags {
            json: true,
            ..Flags::default()
        };
        let out = run_command(Command::Classify, &z2_cubed(), &flags);
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = vec![
            "locally_simple",
            "totally_ramified",
            "etale_index",
            "kernel",
            "gorenstein",
            "certificate",
            "cross_checks",
            "lci",
            "lci_reason",
            "smooth",
            "assumptions",
        ];
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        expected.sort();
        assert_eq!(keys_sorted, expected);
        let mut kernel_keys: Vec<&str> = v["kernel"].as_object().unwrap().keys().map(String::as_str).collect();
        kernel_keys.sort();
        assert_eq!(kernel_keys, ["generators", "min_support", "order"]);
        assert_eq!(v["gorenstein"], true);
        assert_eq!(v["lci"], "NotLCI");
        assert_eq!(v["certificate"], serde_json::json!([1, 1, 1]));
    }

    #[test]
    fn hilbert_of_z2_cubed() {
        let mut flags = Flags::default();
        flags.limits.max_degree = 6;
        let out = run_command(Command::Hilbert, &z2_cubed(), &flags);
        assert!(out.stdout.contains("numerator: 1 + 6t^2 + t^4"), "{}", out.stdout);
        assert!(out.stdout.contains("palindromic: true"));
    }

    #[test]
    fn socle_of_z3_pair() {
        let doc = parse_input(r#"{"group":[3],"branch":[{"generator":[1],"character":1},{"generator":[1],"character":2}]}"#).unwrap();
        let out = run_command(Command::Socle, &doc, &Flags::default());
        assert!(out.stdout.contains("socle dimension: 2"), "{}", out.stdout);
        assert!(out.stdout.contains("gorenstein: false"));
    }

    #[test]
    fn exit_codes() {
        let bad = CoverDocument::new(vec![4], vec![(vec![1], 2)]);
        assert_eq!(run_command(Command::Validate, &bad, &Flags::default()).code, EXIT_INVALID);
        let mut flags = Flags::default();
        flags.limits.fiber_order = 4;
        assert_eq!(run_command(Command::Fiber, &z2_cubed(), &flags).code, EXIT_LIMIT);
        assert_eq!(run_command(Command::Factor, &z2_cubed(), &Flags::default()).code, EXIT_OK);
    }
}
