//! Subcommand implementations: validate, fan evaluations out through the
//! library, and render one deterministic table per run.

use cspoly::asymptotics::{self, EvalReport};
use cspoly::parallel;
use cspoly::recurrence;
use cspoly::zeros;
use cspoly::{Params, ScaledReal};

use crate::table::{Cell, ConfigValue, Table};
use crate::{
    CmdError, ConvergenceArgs, EvalArgs, Format, HermiteCheckArgs, ParamArgs, Scale, SumLemmaArgs,
    SweepArgs, ZerosArgs,
};

fn params(args: &ParamArgs) -> Result<Params, CmdError> {
    Params::new(args.alpha, args.beta).map_err(|e| CmdError::Usage(e.to_string()))
}

fn scaled_cells(v: &ScaledReal) -> (Cell, Cell) {
    if v.is_zero() {
        (Cell::Int(0), Cell::Empty)
    } else {
        (Cell::Int(v.sign() as i64), Cell::Float(v.log10_abs()))
    }
}

fn opt_scaled_cells(v: &Option<ScaledReal>) -> (Cell, Cell) {
    match v {
        Some(v) => scaled_cells(v),
        None => (Cell::Empty, Cell::Empty),
    }
}

fn opt_float(v: Option<f64>) -> Cell {
    match v {
        Some(v) => Cell::Float(v),
        None => Cell::Empty,
    }
}

const EVAL_COLUMNS: [&str; 15] = [
    "n",
    "big_n",
    "t",
    "x",
    "exact_sign",
    "exact_log10",
    "uniform_sign",
    "uniform_log10",
    "rel_err_uniform",
    "outer_sign",
    "outer_log10",
    "rel_err_outer",
    "inner_sign",
    "inner_log10",
    "rel_err_inner",
];

fn report_row(r: &EvalReport) -> Vec<Cell> {
    let (es, el) = scaled_cells(&r.exact);
    let (us, ul) = opt_scaled_cells(&r.airy_uniform);
    let (os, ol) = opt_scaled_cells(&r.outer);
    let (is, il) = opt_scaled_cells(&r.inner);
    vec![
        Cell::Int(r.n as i64),
        Cell::Float(r.big_n),
        Cell::Float(r.t),
        Cell::Float(r.x),
        es,
        el,
        us,
        ul,
        opt_float(r.rel_err_uniform),
        os,
        ol,
        opt_float(r.rel_err_outer),
        is,
        il,
        opt_float(r.rel_err_inner),
    ]
}

fn render(table: &Table, format: Format, config: &[(&'static str, ConfigValue)]) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(config),
    }
}

pub fn run_eval(args: &EvalArgs) -> Result<String, CmdError> {
    let p = params(&args.params)?;
    let n_list = gather_degrees(args.n, &args.n_list)?;
    let positions = gather_positions(args)?;
    let pairs: Vec<(u32, f64)> = n_list
        .iter()
        .flat_map(|&n| positions.iter().map(move |&t| (n, t)))
        .collect();
    let reports = parallel::with_threads(args.output.threads.max(1), || {
        parallel::par_collect(pairs.len(), |i| {
            let (n, pos) = pairs[i];
            let t = match args.scale {
                Scale::NScaled => pos,
                Scale::Raw => pos / p.big_n(n).sqrt(),
            };
            asymptotics::eval_report(&p, n, t)
        })
    });
    let mut table = Table::new(EVAL_COLUMNS.to_vec());
    for r in reports {
        let r = r.map_err(CmdError::from)?;
        table.push(report_row(&r));
    }
    let config = vec![
        ("command", ConfigValue::Str("eval".into())),
        ("alpha", ConfigValue::Float(p.alpha())),
        ("beta", ConfigValue::Float(p.beta())),
        (
            "n_list",
            ConfigValue::IntList(n_list.iter().map(|&n| n as i64).collect()),
        ),
        ("positions", ConfigValue::FloatList(positions.clone())),
        ("scale", ConfigValue::Str(scale_name(args.scale).into())),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}

fn scale_name(s: Scale) -> &'static str {
    match s {
        Scale::NScaled => "n-scaled",
        Scale::Raw => "raw",
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn gather_degrees(single: Option<u32>, list: &[u32]) -> Result<Vec<u32>, CmdError> {
    let ns: Vec<u32> = match single {
        Some(n) => vec![n],
        None => list.to_vec(),
    };
    if ns.is_empty() {
        return Err(CmdError::Usage("provide --n or --n-list".into()));
    }
    Ok(ns)
}

fn gather_positions(args: &EvalArgs) -> Result<Vec<f64>, CmdError> {
    if let Some(x) = args.x {
        if args.scale != Scale::Raw {
            return Err(CmdError::Usage("--x requires --scale raw".into()));
        }
        return Ok(vec![x]);
    }
    let ts: Vec<f64> = match args.t {
        Some(t) => vec![t],
        None => args.t_grid.clone(),
    };
    if ts.is_empty() {
        return Err(CmdError::Usage("provide --t, --t-grid, or --x".into()));
    }
    if ts.iter().any(|t| !t.is_finite()) {
        return Err(CmdError::Usage("positions must be finite".into()));
    }
    Ok(ts)
}

pub fn run_convergence(args: &ConvergenceArgs) -> Result<String, CmdError> {
    let p = params(&args.params)?;
    let ns = &args.n_list;
    if ns.len() < 2 {
        return Err(CmdError::Usage(
            "--n-list needs at least two degrees".into(),
        ));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CmdError::Usage(
            "--n-list must be strictly increasing".into(),
        ));
    }
    if ns[0] < 50 {
        return Err(CmdError::Usage("convergence degrees must be >= 50".into()));
    }
    if !args.t.is_finite() {
        return Err(CmdError::Usage("--t must be finite".into()));
    }
    let reports = parallel::with_threads(args.output.threads.max(1), || {
        parallel::par_collect(ns.len(), |i| asymptotics::eval_report(&p, ns[i], args.t))
    });
    let mut table = Table::new(vec![
        "n",
        "big_n",
        "t",
        "err_uniform",
        "err_outer",
        "err_inner",
        "ratio_uniform",
        "ratio_outer",
        "ratio_inner",
    ]);
    let mut prev: Option<EvalReport> = None;
    for r in reports {
        let r = r.map_err(CmdError::from)?;
        let ratio = |cur: Option<f64>, before: Option<f64>| match (cur, before) {
            (Some(c), Some(b)) if c > 0.0 => Some(b / c),
            _ => None,
        };
        let (ru, ro, ri) = match &prev {
            Some(b) => (
                ratio(r.rel_err_uniform, b.rel_err_uniform),
                ratio(r.rel_err_outer, b.rel_err_outer),
                ratio(r.rel_err_inner, b.rel_err_inner),
            ),
            None => (None, None, None),
        };
        table.push(vec![
            Cell::Int(r.n as i64),
            Cell::Float(r.big_n),
            Cell::Float(r.t),
            opt_float(r.rel_err_uniform),
            opt_float(r.rel_err_outer),
            opt_float(r.rel_err_inner),
            opt_float(ru),
            opt_float(ro),
            opt_float(ri),
        ]);
        prev = Some(r);
    }
    let config = vec![
        ("command", ConfigValue::Str("convergence".into())),
        ("alpha", ConfigValue::Float(p.alpha())),
        ("beta", ConfigValue::Float(p.beta())),
        (
            "n_list",
            ConfigValue::IntList(ns.iter().map(|&n| n as i64).collect()),
        ),
        ("t", ConfigValue::Float(args.t)),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}

const HIST_BINS: usize = 64;

pub fn run_zeros(args: &ZerosArgs) -> Result<String, CmdError> {
    let p = params(&args.params)?;
    if args.n < 2 {
        return Err(CmdError::Usage("zeros requires n >= 2".into()));
    }
    if !args.c.is_finite() || args.c <= 0.0 {
        return Err(CmdError::Usage("zeros requires c > 0".into()));
    }
    let report = parallel::with_threads(args.output.threads.max(1), || {
        zeros::zero_report(&p, args.n, args.c)
    })
    .map_err(CmdError::from)?;

    // histogram over the model support widened by 0.2 on each side; any zero
    // beyond the range is counted into the nearest edge bin
    let edge = args.c.sqrt() + 0.2;
    let width = 2.0 * edge / HIST_BINS as f64;
    let mut counts = [0i64; HIST_BINS];
    for &z in &report.rescaled {
        let idx = (((z + edge) / width).floor() as i64).clamp(0, HIST_BINS as i64 - 1);
        counts[idx as usize] += 1;
    }

    let mut table = Table::new(vec!["section", "index", "position", "value"]);
    for (i, z) in report.rescaled.iter().enumerate() {
        table.push(vec![
            Cell::Str("zero"),
            Cell::Int(i as i64),
            Cell::Empty,
            Cell::Float(*z),
        ]);
    }
    table.push(vec![
        Cell::Str("ks"),
        Cell::Int(0),
        Cell::Empty,
        Cell::Float(report.ks),
    ]);
    for (i, &count) in counts.iter().enumerate() {
        let center = -edge + (i as f64 + 0.5) * width;
        table.push(vec![
            Cell::Str("hist"),
            Cell::Int(i as i64),
            Cell::Float(center),
            Cell::Int(count),
        ]);
    }
    for i in 0..HIST_BINS {
        let center = -edge + (i as f64 + 0.5) * width;
        table.push(vec![
            Cell::Str("model"),
            Cell::Int(i as i64),
            Cell::Float(center),
            Cell::Float(zeros::semicircle_density(args.c, center)),
        ]);
    }
    let config = vec![
        ("command", ConfigValue::Str("zeros".into())),
        ("alpha", ConfigValue::Float(p.alpha())),
        ("beta", ConfigValue::Float(p.beta())),
        ("n", ConfigValue::Int(args.n as i64)),
        ("m", ConfigValue::Int(report.m as i64)),
        ("c", ConfigValue::Float(args.c)),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}

/// `--x` accepts a plain number or `K*sqrt(n)`, evaluated per degree.
fn parse_x_spec(spec: &str) -> Result<XSpec, CmdError> {
    let s = spec.trim();
    if let Some(prefix) = s.strip_suffix("*sqrt(n)") {
        let k: f64 = prefix
            .trim()
            .parse()
            .map_err(|_| CmdError::Usage(format!("cannot parse --x expression '{spec}'")))?;
        return Ok(XSpec::SqrtMultiple(k));
    }
    if s == "sqrt(n)" {
        return Ok(XSpec::SqrtMultiple(1.0));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| CmdError::Usage(format!("cannot parse --x value '{spec}'")))?;
    Ok(XSpec::Fixed(v))
}

enum XSpec {
    Fixed(f64),
    SqrtMultiple(f64),
}

impl XSpec {
    fn at(&self, n: u64) -> f64 {
        match self {
            XSpec::Fixed(v) => *v,
            XSpec::SqrtMultiple(k) => k * (n as f64).sqrt(),
        }
    }
}

pub fn run_sum_lemma(args: &SumLemmaArgs) -> Result<String, CmdError> {
    let ns: Vec<u64> = match args.n {
        Some(n) => vec![n],
        None => args.n_list.clone(),
    };
    if ns.is_empty() {
        return Err(CmdError::Usage("provide --n or --n-list".into()));
    }
    let spec = parse_x_spec(&args.x)?;
    let mut table = Table::new(vec!["n", "x", "lhs", "rhs", "gap"]);
    let results = parallel::with_threads(args.output.threads.max(1), || {
        parallel::par_collect(ns.len(), |i| {
            let n = ns[i];
            let x = spec.at(n);
            asymptotics::sum_lemma(args.beta, n, x).map(|(lhs, rhs)| (n, x, lhs, rhs))
        })
    });
    for r in results {
        let (n, x, lhs, rhs) = r.map_err(CmdError::from)?;
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Float(x),
            Cell::Float(lhs),
            Cell::Float(rhs),
            Cell::Float((lhs - rhs).abs()),
        ]);
    }
    let config = vec![
        ("command", ConfigValue::Str("sum-lemma".into())),
        ("beta", ConfigValue::Float(args.beta)),
        (
            "n_list",
            ConfigValue::IntList(ns.iter().map(|&n| n as i64).collect()),
        ),
        ("x", ConfigValue::Str(args.x.clone())),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}

pub fn run_hermite_check(args: &HermiteCheckArgs) -> Result<String, CmdError> {
    if args.x_grid.is_empty() || args.x_grid.iter().any(|x| !x.is_finite()) {
        return Err(CmdError::Usage(
            "--x-grid must be nonempty finite values".into(),
        ));
    }
    let p = Params::new(0.5, 1.5).expect("hermite parameters are valid");
    let devs = parallel::with_threads(args.output.threads.max(1), || {
        parallel::par_collect(args.n_max as usize + 1, |n| {
            let n = n as u32;
            let mut max_dev = 0.0f64;
            for &x in &args.x_grid {
                let (prev, cur) = recurrence::eval_phi_pair(&p, n, x);
                let href = recurrence::hermite_reference(n, x).expect("n! stays in range");
                // envelope: the largest of the neighboring-degree magnitudes,
                // a stable local scale even when phi_n sits near a zero
                let ln_env = cur.ln_abs().max(prev.ln_abs()).max(href.ln_abs()).max(0.0);
                let env = ScaledReal::from_sign_ln(1, ln_env);
                max_dev = max_dev.max(cur.diff_over(&href, &env));
            }
            max_dev
        })
    });
    let mut table = Table::new(vec!["n", "max_rel_dev"]);
    for (n, dev) in devs.iter().enumerate() {
        table.push(vec![Cell::Int(n as i64), Cell::Float(*dev)]);
    }
    let config = vec![
        ("command", ConfigValue::Str("hermite-check".into())),
        ("alpha", ConfigValue::Float(0.5)),
        ("beta", ConfigValue::Float(1.5)),
        ("n_max", ConfigValue::Int(args.n_max as i64)),
        ("x_grid", ConfigValue::FloatList(args.x_grid.clone())),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}

pub fn run_sweep(args: &SweepArgs) -> Result<String, CmdError> {
    let p = params(&args.params)?;
    if !args.t_step.is_finite()
        || args.t_step <= 0.0
        || !args.t_min.is_finite()
        || args.t_max < args.t_min
    {
        return Err(CmdError::Usage(
            "sweep needs t_min <= t_max and t_step > 0".into(),
        ));
    }
    let count = ((args.t_max - args.t_min) / args.t_step + 0.5).floor() as usize + 1;
    let reports = parallel::with_threads(args.output.threads.max(1), || {
        parallel::par_collect(count, |i| {
            let t = args.t_min + i as f64 * args.t_step;
            asymptotics::eval_report(&p, args.n, t)
        })
    });
    let mut table = Table::new(EVAL_COLUMNS.to_vec());
    for r in reports {
        let r = r.map_err(CmdError::from)?;
        table.push(report_row(&r));
    }
    let config = vec![
        ("command", ConfigValue::Str("sweep".into())),
        ("alpha", ConfigValue::Float(p.alpha())),
        ("beta", ConfigValue::Float(p.beta())),
        ("n", ConfigValue::Int(args.n as i64)),
        ("t_min", ConfigValue::Float(args.t_min)),
        ("t_max", ConfigValue::Float(args.t_max)),
        ("t_step", ConfigValue::Float(args.t_step)),
        (
            "format",
            ConfigValue::Str(format_name(args.output.format).into()),
        ),
    ];
    Ok(render(&table, args.output.format, &config))
}
