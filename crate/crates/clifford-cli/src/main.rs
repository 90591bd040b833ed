//! `ck` — batch front end for the finite Clifford semigroup toolkit.
//!
//! Inputs are Cayley-table files or `@name` references into the built-in
//! catalog. Reports are deterministic `key = value` lines on stdout; the
//! trailing `timing_ms` line is suppressed by `--no-timing` so that repeated
//! runs are byte-identical. Exit codes: 0 for success or a true verdict,
//! 1 for a false verdict (witnesses in the report), 2 for input errors.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use clifford_kit::catalog;
use clifford_kit::construct;
use clifford_kit::embed::{self, EmbedOptions, EmbeddingReport};
use clifford_kit::hom;
use clifford_kit::io;
use clifford_kit::metric::{
    self, check_metric_flags, invariance_flags, ConePoint, MetricMatrix, MetricOracle, Ratio,
    Refutation,
};
use clifford_kit::order::natural_order;
use clifford_kit::semigroup::{classify, clifford_structure, FiniteSemigroup};
use clifford_kit::Error;

#[derive(Parser)]
#[command(
    name = "ck",
    version,
    about = "Finite Clifford semigroup toolkit",
    long_about = "Analyze Cayley tables, build reduced products and cones, enumerate \
                  homomorphisms, verify the canonical embeddings, and check subinvariant \
                  metrics. Semigroup arguments are file paths or @name catalog references."
)]
struct Cli {
    /// Suppress the timing line so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a Cayley table and report its structure.
    Analyze { table: String },
    /// Enumerate all homomorphisms from one semigroup to another.
    Homs { source: String, target: String },
    /// Componentwise direct product of two semigroups.
    Product { left: String, right: String },
    /// Reduced product E x_I H; the ideal is `empty`, `down(i)`, or `i,j,...`.
    Reduced {
        semilattice: String,
        ideal: String,
        factor: String,
    },
    /// Cone over a group at a chain resolution (levels = 1 is the 0-extension).
    Cone {
        group: String,
        #[arg(long, default_value_t = 1)]
        levels: usize,
    },
    /// First embedding: diagonal of the reduced-product coordinate maps.
    Embed1 {
        table: String,
        /// Coordinate idempotents (defaults to all of them).
        #[arg(long = "A", value_delimiter = ',')]
        coordinates: Option<Vec<usize>>,
        /// Allow a proper coordinate subset (not U-dense; experiments only).
        #[arg(long)]
        force: bool,
        /// Insist on materializing the target product.
        #[arg(long)]
        materialize: bool,
    },
    /// Second embedding: the projection onto E paired with cone coordinates.
    Embed2 {
        table: String,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long = "A", value_delimiter = ',')]
        coordinates: Option<Vec<usize>>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        materialize: bool,
    },
    /// Embeddability flags of a Clifford semigroup.
    Classify {
        table: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Check metric axioms and subinvariance flags of a metric file.
    MetricCheck { table: String, metric: PathBuf },
    /// Subinvariant closure of a metric on a Clifford semigroup.
    MetricClosure { table: String, metric: PathBuf },
    /// Pointwise cone distances over a group metric; points are `apex` or `t@h`.
    ConeMetric {
        group: String,
        metric: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<String>,
    },
    /// Refute subinvariant metrizability of the reciprocal semilattice.
    Refute64 {
        /// `euclid`, `discrete`, or a path to an oracle table file.
        #[arg(long)]
        oracle: String,
        /// Ball radius as a rational `p/q`.
        #[arg(long)]
        epsilon: String,
        /// Carrier truncation for the built-in oracles.
        #[arg(long = "N", default_value_t = 128)]
        truncation: usize,
    },
    /// List the built-in library (optionally dumping it as table files).
    Catalog {
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

struct Report {
    lines: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            lines: vec![format!("command = {command}")],
        }
    }

    fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    fn push_raw(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn push_set(&mut self, key: &str, values: &[usize]) {
        let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        self.lines.push(format!("{key} = [{}]", inner.join(", ")));
    }

    fn push_pairs(&mut self, key: &str, pairs: &[(usize, usize)]) {
        let inner: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        self.lines.push(format!("{key} = [{}]", inner.join(", ")));
    }

    fn print(self, no_timing: bool, started: Instant) {
        for line in &self.lines {
            println!("{line}");
        }
        if !no_timing {
            println!("timing_ms = {}", started.elapsed().as_millis());
        }
    }
}

fn load_semigroup(source: &str) -> Result<FiniteSemigroup, Error> {
    if let Some(name) = source.strip_prefix('@') {
        return catalog::find(name).ok_or_else(|| {
            Error::InvalidArgument(format!("no catalog entry named {name:?}"))
        });
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {source}: {e}")))?;
    io::parse_semigroup(&text)
}

fn load_metric(base: &FiniteSemigroup, path: &Path) -> Result<MetricMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let entries = io::parse_metric(&text)?;
    MetricMatrix::new(base.clone(), entries)
}

fn parse_ideal_spec(spec: &str, e: &FiniteSemigroup) -> Result<Vec<usize>, Error> {
    let spec = spec.trim();
    if spec == "empty" {
        return Ok(Vec::new());
    }
    if let Some(inner) = spec.strip_prefix("down(").and_then(|s| s.strip_suffix(')')) {
        let x: usize = inner
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad down(..) element {inner:?}")))?;
        let order = natural_order(e)?;
        e.check_element(x)?;
        return Ok(order.down_set(x));
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad ideal element {tok:?}")))
        })
        .collect()
}

fn parse_cone_point(spec: &str, group_size: usize) -> Result<ConePoint, Error> {
    let spec = spec.trim();
    if spec == "apex" {
        return Ok(ConePoint::apex());
    }
    let (level, element) = spec
        .split_once('@')
        .ok_or_else(|| Error::InvalidArgument(format!("expected `t@h` or `apex`, got {spec:?}")))?;
    let level = io::parse_ratio(level).map_err(Error::InvalidArgument)?;
    let element: usize = element
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad group element {element:?}")))?;
    if element >= group_size {
        return Err(Error::NoSuchElement {
            element,
            size: group_size,
        });
    }
    ConePoint::new(level, element)
}

fn format_cone_point(p: &ConePoint) -> String {
    if p.is_apex() {
        "apex".to_string()
    } else {
        format!("({},{})", io::format_ratio(p.level()), p.element())
    }
}

fn push_semigroup(report: &mut Report, s: &FiniteSemigroup) {
    report.push_raw("table:");
    for line in io::serialize_semigroup(s).lines() {
        report.push_raw(line);
    }
}

fn push_embedding(report: &mut Report, r: &EmbeddingReport) {
    report.push("description", &r.description);
    report.push("coordinates", r.coordinates.len());
    for (k, label) in r.coordinates.iter().enumerate() {
        report.push(&format!("coordinate {k}"), label);
    }
    report.push("target_size", &r.target_size);
    report.push("materialized", r.materialized);
    report.push("hom_verified", r.hom_verified);
    report.push("injective", r.injective);
    report.push_pairs("collisions", &r.collisions);
    if let Some(flag) = r.image_in_zero_extension {
        report.push("image_in_zero_extension", flag);
    }
    report.push("sparse_override", r.sparse_override);
    for (k, image) in r.component_images.iter().enumerate() {
        report.push_set(&format!("component {}", r.coordinates[k]), image);
    }
}

fn embedding_exit(r: &EmbeddingReport) -> u8 {
    if r.hom_verified && r.injective {
        0
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<(Report, u8), Error> {
    match &cli.command {
        Command::Analyze { table } => {
            let s = load_semigroup(table)?;
            let c = classify(&s);
            let mut report = Report::new("analyze");
            report.push("input", table);
            report.push("size", s.size());
            report.push("is_semilattice", c.is_semilattice);
            report.push("is_group", c.is_group);
            report.push("is_regular", c.is_regular);
            report.push("is_inverse", c.is_inverse);
            report.push("is_clifford", c.is_clifford);
            report.push_set("idempotents", &c.idempotents);
            report.push("idempotents_commute", c.idempotents_commute);
            Ok((report, 0))
        }
        Command::Homs { source, target } => {
            let x = load_semigroup(source)?;
            let y = load_semigroup(target)?;
            let homs = hom::enumerate_homs(&x, &y)?;
            let mut report = Report::new("homs");
            report.push("source", source);
            report.push("target", target);
            report.push("count", homs.len());
            for (i, h) in homs.iter().enumerate() {
                report.push_set(&format!("hom {i}"), h.map());
            }
            Ok((report, 0))
        }
        Command::Product { left, right } => {
            let a = load_semigroup(left)?;
            let b = load_semigroup(right)?;
            let p = construct::direct_product(&a, &b)?;
            let mut report = Report::new("product");
            report.push("left", left);
            report.push("right", right);
            report.push("size", p.size());
            report.push("is_clifford", classify(&p).is_clifford);
            push_semigroup(&mut report, &p);
            Ok((report, 0))
        }
        Command::Reduced {
            semilattice,
            ideal,
            factor,
        } => {
            let e = load_semigroup(semilattice)?;
            let h = load_semigroup(factor)?;
            let ideal_elems = parse_ideal_spec(ideal, &e)?;
            let rp = construct::reduced_product(&e, &ideal_elems, &h)?;
            let mut report = Report::new("reduced");
            report.push("semilattice", semilattice);
            report.push_set("ideal", &ideal_elems);
            report.push("factor", factor);
            report.push("size", rp.semigroup.size());
            report.push("is_clifford", classify(&rp.semigroup).is_clifford);
            push_semigroup(&mut report, &rp.semigroup);
            report.push_set("quotient", rp.quotient.map());
            report.push_set("projection", rp.projection.map());
            Ok((report, 0))
        }
        Command::Cone { group, levels } => {
            let g = load_semigroup(group)?;
            let rp = construct::cone(&g, *levels)?;
            let mut report = Report::new("cone");
            report.push("group", group);
            report.push("levels", levels);
            report.push("size", rp.semigroup.size());
            report.push("is_clifford", classify(&rp.semigroup).is_clifford);
            push_semigroup(&mut report, &rp.semigroup);
            Ok((report, 0))
        }
        Command::Embed1 {
            table,
            coordinates,
            force,
            materialize,
        } => {
            let s = load_semigroup(table)?;
            let opts = EmbedOptions {
                allow_sparse: *force,
                force_materialize: *materialize,
                ..EmbedOptions::default()
            };
            let r = embed::embed_into_reduced_products(&s, coordinates.as_deref(), &opts)?;
            let mut report = Report::new("embed1");
            report.push("input", table);
            push_embedding(&mut report, &r);
            let code = embedding_exit(&r);
            Ok((report, code))
        }
        Command::Embed2 {
            table,
            levels,
            coordinates,
            force,
            materialize,
        } => {
            let s = load_semigroup(table)?;
            let opts = EmbedOptions {
                allow_sparse: *force,
                force_materialize: *materialize,
                ..EmbedOptions::default()
            };
            let r = embed::embed_into_cones(&s, coordinates.as_deref(), *levels, &opts)?;
            let mut report = Report::new("embed2");
            report.push("input", table);
            report.push("levels", levels);
            push_embedding(&mut report, &r);
            let code = embedding_exit(&r);
            Ok((report, code))
        }
        Command::Classify { table, levels } => {
            let s = load_semigroup(table)?;
            let flags = embed::classify_embeddability(&s, *levels)?;
            let mut report = Report::new("classify");
            report.push("input", table);
            report.push("two_separated", flags.two_separated);
            report.push("two_embeddable", flags.two_embeddable);
            report.push("chain_levels", flags.chain_levels);
            report.push("chain_embeddable", flags.chain_embeddable);
            report.push("ditopological", flags.ditopological);
            let all = flags.two_separated
                && flags.two_embeddable
                && flags.chain_embeddable
                && flags.ditopological;
            Ok((report, if all { 0 } else { 1 }))
        }
        Command::MetricCheck { table, metric } => {
            let s = load_semigroup(table)?;
            let mut report = Report::new("metric-check");
            report.push("input", table);
            report.push("metric_file", metric.display());
            let text = std::fs::read_to_string(metric).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", metric.display()))
            })?;
            let entries = io::parse_metric(&text)?;
            match MetricMatrix::new(s.clone(), entries) {
                Err(Error::InvalidMetric(failure)) => {
                    report.push("metric", false);
                    report.push("failure", failure);
                    Ok((report, 1))
                }
                Err(other) => Err(other),
                Ok(m) => match clifford_structure(&s) {
                    Ok(c) => {
                        let flags = check_metric_flags(&m, &c);
                        report.push("metric", flags.metric);
                        report.push("left_subinvariant", flags.left_subinvariant);
                        report.push("right_subinvariant", flags.right_subinvariant);
                        report.push("inversion_isometry", flags.inversion_isometry);
                        report.push("subinvariant", flags.subinvariant);
                        if let Some((x, y, z)) = flags.left_witness {
                            report.push("left_witness", format!("({x},{y},{z})"));
                        }
                        if let Some((x, y, z)) = flags.right_witness {
                            report.push("right_witness", format!("({x},{y},{z})"));
                        }
                        if let Some((x, y)) = flags.inversion_witness {
                            report.push("inversion_witness", format!("({x},{y})"));
                        }
                        Ok((report, if flags.subinvariant { 0 } else { 1 }))
                    }
                    Err(_) => {
                        // not Clifford: the one-sided flags still make sense
                        let flags = invariance_flags(&m);
                        report.push("metric", true);
                        report.push("left_subinvariant", flags.left_subinvariant);
                        report.push("right_subinvariant", flags.right_subinvariant);
                        if let Some((x, y, z)) = flags.left_witness {
                            report.push("left_witness", format!("({x},{y},{z})"));
                        }
                        if let Some((x, y, z)) = flags.right_witness {
                            report.push("right_witness", format!("({x},{y},{z})"));
                        }
                        let ok = flags.left_subinvariant && flags.right_subinvariant;
                        Ok((report, if ok { 0 } else { 1 }))
                    }
                },
            }
        }
        Command::MetricClosure { table, metric } => {
            let s = load_semigroup(table)?;
            let m = load_metric(&s, metric)?;
            let c = clifford_structure(&s)?;
            let closed = metric::subinvariant_closure(&m, &c);
            let mut report = Report::new("metric-closure");
            report.push("input", table);
            report.push("metric_file", metric.display());
            report.push_raw("closure:");
            for line in io::serialize_metric(&closed).lines() {
                report.push_raw(line);
            }
            let flags = check_metric_flags(&closed, &c);
            report.push("subinvariant", flags.subinvariant);
            Ok((report, 0))
        }
        Command::ConeMetric {
            group,
            metric,
            points,
        } => {
            let g = load_semigroup(group)?;
            let dg = load_metric(&g, metric)?;
            let sample: Vec<ConePoint> = points
                .iter()
                .map(|p| parse_cone_point(p, g.size()))
                .collect::<Result<_, _>>()?;
            let r = metric::verify_cone_metric(&dg, &sample)?;
            let mut report = Report::new("cone-metric");
            report.push("group", group);
            report.push("metric_file", metric.display());
            report.push("points", r.points.len());
            for (i, p) in r.points.iter().enumerate() {
                report.push(&format!("point {i}"), format_cone_point(p));
            }
            for i in 0..r.points.len() {
                for j in i + 1..r.points.len() {
                    report.push(
                        &format!("d {i} {j}"),
                        io::format_ratio(metric::cone_metric(&dg, &r.points[i], &r.points[j])),
                    );
                }
            }
            report.push("metric", r.metric);
            if let Some(f) = &r.metric_failure {
                report.push("metric_failure", f);
            }
            report.push("left_subinvariant", r.left_subinvariant);
            report.push("right_subinvariant", r.right_subinvariant);
            report.push("base_left_subinvariant", r.base_left_subinvariant);
            report.push("base_right_subinvariant", r.base_right_subinvariant);
            report.push("inherits_left", r.inherits_left);
            report.push("inherits_right", r.inherits_right);
            let ok = r.metric && r.inherits_left && r.inherits_right;
            Ok((report, if ok { 0 } else { 1 }))
        }
        Command::Refute64 {
            oracle,
            epsilon,
            truncation,
        } => {
            let eps: Ratio = io::parse_ratio(epsilon).map_err(Error::InvalidArgument)?;
            let oracle_value = match oracle.as_str() {
                "euclid" => MetricOracle::euclid(*truncation)?,
                "discrete" => MetricOracle::discrete(*truncation)?,
                path => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidArgument(format!("cannot read {path}: {e}"))
                    })?;
                    io::parse_oracle(&text)?
                }
            };
            let mut report = Report::new("refute64");
            report.push("oracle", oracle);
            report.push("truncation", oracle_value.truncation());
            report.push("epsilon", io::format_ratio(eps));
            let code = match metric::refute_subinvariance(&oracle_value, eps)? {
                Refutation::Witness {
                    n,
                    even_distance,
                    odd_distance,
                } => {
                    report.push("verdict", "witness");
                    report.push("witness_n", n);
                    report.push("even_distance", io::format_ratio(even_distance));
                    report.push("odd_distance", io::format_ratio(odd_distance));
                    0
                }
                Refutation::Violation {
                    n,
                    odd_distance,
                    even_distance,
                } => {
                    report.push("verdict", "violation");
                    report.push("violation_n", n);
                    report.push("odd_distance", io::format_ratio(odd_distance));
                    report.push("even_distance", io::format_ratio(even_distance));
                    0
                }
                Refutation::Inconclusive {
                    truncation,
                    min_even_distance,
                } => {
                    report.push("verdict", "inconclusive");
                    report.push("truncation", truncation);
                    match min_even_distance {
                        Some(d) => report.push("min_even_distance", io::format_ratio(d)),
                        None => report.push("min_even_distance", "none"),
                    }
                    1
                }
            };
            Ok((report, code))
        }
        Command::Catalog { dump } => {
            let entries = catalog::catalog();
            let mut report = Report::new("catalog");
            report.push("entries", entries.len());
            for e in &entries {
                report.push_raw(format!("{} {}", e.name, e.semigroup.size()));
            }
            if let Some(dir) = dump {
                std::fs::create_dir_all(dir).map_err(|e| {
                    Error::InvalidArgument(format!("cannot create {}: {e}", dir.display()))
                })?;
                for e in &entries {
                    let path = dir.join(format!("{}.tbl", e.name));
                    std::fs::write(&path, io::serialize_semigroup(&e.semigroup)).map_err(
                        |err| {
                            Error::InvalidArgument(format!(
                                "cannot write {}: {err}",
                                path.display()
                            ))
                        },
                    )?;
                }
                report.push("dumped", dir.display());
            }
            Ok((report, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok((report, code)) => {
            report.print(cli.no_timing, started);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
