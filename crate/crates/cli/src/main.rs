use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fht_core::analysis::{
    complexity_sweep_with, dyadic_complexity, error_sweep_with, size_curve, ComplexityPoint,
    SweepAlgorithm,
};
use fht_core::dyadic::gdt_transform_with;
use fht_core::rational::to_f64;
use fht_core::sizing::lambert_root;
use fht_core::superpixel::{sp_opcount_with, sp_transform_with, SpOptions, DEFAULT_MEM_CAP};
use fht_core::{
    load_graymap, random_image, ref_transform, save_graymap, shepp_logan, spec_from_lambda,
    superpixel_size, GrayImage, HoughImage, Split, SuperpixelSpec,
};

mod format;
mod plot;

use format::decimal;

#[derive(Parser)]
#[command(
    name = "fht",
    version,
    about = "Fast Hough transforms on graymap images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hough transform of a graymap image.
    Transform(TransformArgs),
    /// Write the Shepp-Logan phantom as a graymap.
    Phantom(PhantomArgs),
    /// Write a seeded uniform random graymap.
    Random(RandomArgs),
    /// Maximum orthotropic error on n x n images.
    ErrorSweep(SweepArgs),
    /// Analytic addition counts on n x n images.
    Opcount(SweepArgs),
    /// Superpixel size for an accuracy target.
    SpSize(SpSizeArgs),
    /// Line chart of CSV columns as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Gdt,
    Sp,
    Ref,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Pow2,
    Balanced,
}

impl From<SplitArg> for Split {
    fn from(s: SplitArg) -> Self {
        match s {
            SplitArg::Pow2 => Split::PowerOfTwo,
            SplitArg::Balanced => Split::Balanced,
        }
    }
}

#[derive(Args)]
struct SpecArgs {
    /// Superpixel width (odd values keep it centered).
    #[arg(long, conflicts_with = "lambda")]
    sp_width: Option<usize>,
    /// Superpixel height [default: sp-width].
    #[arg(long, requires = "sp_width")]
    sp_height: Option<usize>,
    /// Non-zero column inside the superpixel [default: sp-width / 2].
    #[arg(long, requires = "sp_width")]
    sp_col: Option<usize>,
}

impl SpecArgs {
    fn explicit(&self) -> Result<Option<SuperpixelSpec>> {
        let Some(w) = self.sp_width else {
            return Ok(None);
        };
        let h = self.sp_height.unwrap_or(w);
        let col = self.sp_col.unwrap_or(w / 2);
        Ok(Some(SuperpixelSpec::new(w, h, col)?))
    }
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "gdt")]
    algo: Algo,
    /// Accuracy target selecting the superpixel size.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    spec: SpecArgs,
    /// Hough image as `t,s,value` rows.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Hough image scaled to 16 bits, with a `.txt` sidecar.
    #[arg(long)]
    out_pgm: Option<PathBuf>,
    /// Largest expanded image in pixels.
    #[arg(long, default_value_t = DEFAULT_MEM_CAP)]
    mem_cap: usize,
    #[arg(long, value_enum, default_value = "pow2")]
    split: SplitArg,
}

#[derive(Args)]
struct PhantomArgs {
    #[arg(long)]
    size: usize,
    #[arg(long)]
    out_pgm: PathBuf,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    #[arg(long, default_value_t = 255)]
    max: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_pgm: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "gdt")]
    algo: Algo,
    /// Comma-separated accuracy targets.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    #[command(flatten)]
    spec: SpecArgs,
    /// Ascending sizes, e.g. `4,8,16` or `2:64`.
    #[arg(long)]
    sizes: String,
    /// Output file [default: stdout].
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pow2")]
    split: SplitArg,
}

#[derive(Args)]
struct SpSizeArgs {
    /// Image width.
    #[arg(long, required_unless_present = "sizes")]
    width: Option<usize>,
    /// Comma-separated accuracy targets.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<f64>,
    /// Emit `n,lambda,sp_size` rows for these widths instead.
    #[arg(long, conflicts_with = "width")]
    sizes: Option<String>,
    #[arg(long, requires = "sizes")]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    in_csv: PathBuf,
    #[arg(long)]
    out_svg: PathBuf,
    /// Column on the horizontal axis.
    #[arg(long)]
    x: String,
    /// Comma-separated columns, one polyline each.
    #[arg(long, value_delimiter = ',', required = true)]
    y: Vec<String>,
    /// Column whose values split each series.
    #[arg(long)]
    group: Option<String>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Transform(a) => transform(&a),
        Command::Phantom(a) => phantom(&a),
        Command::Random(a) => random(&a),
        Command::ErrorSweep(a) => error_sweep(&a),
        Command::Opcount(a) => opcount(&a),
        Command::SpSize(a) => sp_size(&a),
        Command::Plot(a) => plot_csv(&a),
    }
}

fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let mut sizes = Vec::new();
    for token in text.split(',').map(str::trim) {
        if let Some((lo, hi)) = token.split_once(':') {
            let lo: usize = lo
                .parse()
                .with_context(|| format!("bad size range `{token}`"))?;
            let hi: usize = hi
                .parse()
                .with_context(|| format!("bad size range `{token}`"))?;
            sizes.extend(lo..=hi);
        } else {
            sizes.push(
                token
                    .parse()
                    .with_context(|| format!("bad size `{token}`"))?,
            );
        }
    }
    ensure!(!sizes.is_empty(), "size list is empty");
    ensure!(sizes[0] > 0, "sizes must be positive");
    ensure!(
        sizes.windows(2).all(|p| p[0] < p[1]),
        "sizes must be strictly ascending"
    );
    Ok(sizes)
}

fn csv_sink(path: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match path {
        Some(p) => {
            Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn lambda_cell(lambda: Option<f64>) -> String {
    lambda.map(decimal).unwrap_or_default()
}

fn transform(a: &TransformArgs) -> Result<()> {
    ensure!(
        a.out_csv.is_some() || a.out_pgm.is_some(),
        "nothing to write: pass --out-csv and/or --out-pgm"
    );
    let img =
        load_graymap(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let explicit = a.spec.explicit()?;
    if a.algo != Algo::Sp {
        ensure!(
            a.lambda.is_none() && explicit.is_none(),
            "--lambda and --sp-* apply only to --algo sp"
        );
    }
    let (hough, ops) = match a.algo {
        Algo::Gdt => gdt_transform_with(&img, a.split.into())?,
        Algo::Ref => ref_transform(&img)?,
        Algo::Sp => {
            let spec = match (explicit, a.lambda) {
                (Some(spec), _) => spec,
                (None, Some(_)) if img.width() == 1 => SuperpixelSpec::unit(),
                (None, Some(lambda)) => spec_from_lambda(img.width(), lambda)?,
                (None, None) => bail!("--algo sp needs --lambda or --sp-width"),
            };
            let options = SpOptions {
                split: a.split.into(),
                mem_cap: a.mem_cap,
            };
            println!(
                "superpixel: {}x{} column {}",
                spec.sp_width(),
                spec.sp_height(),
                spec.column()
            );
            sp_transform_with(&img, spec, &options)?
        }
    };
    if let Some(path) = &a.out_csv {
        write_hough_csv(&hough, path)?;
    }
    if let Some(path) = &a.out_pgm {
        write_hough_pgm(&hough, path)?;
    }
    println!("additions: {}", ops.additions);
    Ok(())
}

fn write_hough_csv(hough: &HoughImage, path: &Path) -> Result<()> {
    let mut out = csv_sink(Some(path))?;
    out.write_record(["t", "s", "value"])?;
    for t in 0..hough.width() {
        for s in 0..hough.height() {
            out.write_record([t.to_string(), s.to_string(), hough.get(t, s).to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

fn write_hough_pgm(hough: &HoughImage, path: &Path) -> Result<()> {
    const TOP: u128 = 65535;
    let max = u128::from(hough.max_value());
    let scaled = hough
        .values()
        .iter()
        .map(|&v| {
            (u128::from(v) * TOP + max / 2)
                .checked_div(max)
                .unwrap_or(0) as u32
        })
        .collect();
    let img = GrayImage::from_vec(hough.width(), hough.height(), scaled)?;
    save_graymap(&img, path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".txt");
    std::fs::write(
        &sidecar,
        format!(
            "algorithm: {}\nwidth: {} (t)\nheight: {} (s, bottom row s = 0)\nmax_value: {max}\n\
             pixel = round(value * {TOP} / max_value)\n",
            hough.algorithm().tag(),
            hough.width(),
            hough.height(),
        ),
    )
    .context("cannot write normalization sidecar")?;
    Ok(())
}

fn phantom(a: &PhantomArgs) -> Result<()> {
    ensure!(a.size >= 1, "--size must be at least 1");
    save_graymap(&shepp_logan(a.size), &a.out_pgm)
        .with_context(|| format!("cannot write {}", a.out_pgm.display()))?;
    Ok(())
}

fn random(a: &RandomArgs) -> Result<()> {
    let img = random_image(a.width, a.height, a.max, a.seed)?;
    save_graymap(&img, &a.out_pgm)
        .with_context(|| format!("cannot write {}", a.out_pgm.display()))?;
    Ok(())
}

fn error_sweep(a: &SweepArgs) -> Result<()> {
    let sizes = parse_sizes(&a.sizes)?;
    let explicit = a.spec.explicit()?;
    let algorithms = match a.algo {
        Algo::Sp if !a.lambda.is_empty() => a
            .lambda
            .iter()
            .map(|&l| SweepAlgorithm::SuperpixelLambda(l))
            .collect(),
        Algo::Sp => match explicit {
            Some(spec) => vec![SweepAlgorithm::SuperpixelFixed(spec)],
            None => bail!("--algo sp needs --lambda or --sp-width"),
        },
        algo => {
            ensure!(
                a.lambda.is_empty() && explicit.is_none(),
                "--lambda and --sp-* apply only to --algo sp"
            );
            match algo {
                Algo::Gdt => vec![SweepAlgorithm::Dyadic],
                _ => vec![SweepAlgorithm::Reference],
            }
        }
    };
    let mut out = csv_sink(a.out_csv.as_deref())?;
    out.write_record(["n", "algo", "lambda", "max_error"])?;
    for algorithm in algorithms {
        for r in error_sweep_with(algorithm, &sizes, a.split.into())? {
            out.write_record([
                r.width.to_string(),
                algorithm.tag().to_string(),
                lambda_cell(algorithm.lambda()),
                decimal(to_f64(r.global_max)),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

fn opcount(a: &SweepArgs) -> Result<()> {
    let sizes = parse_sizes(&a.sizes)?;
    let split: Split = a.split.into();
    let explicit = a.spec.explicit()?;
    let points: Vec<ComplexityPoint> = match a.algo {
        Algo::Sp if !a.lambda.is_empty() => complexity_sweep_with(&a.lambda, &sizes, split)?,
        Algo::Sp => {
            let Some(spec) = explicit else {
                bail!("--algo sp needs --lambda or --sp-width");
            };
            ensure!(sizes[0] >= 2, "normalized counts need n >= 2");
            sizes
                .iter()
                .map(|&n| {
                    let mut p = ComplexityPoint {
                        n,
                        lambda: None,
                        sp_size: spec.sp_width(),
                        additions: sp_opcount_with(n, n, spec, split).additions,
                        normalized: 0.0,
                    };
                    p.normalized = p.additions as f64 / p.normalizer();
                    p
                })
                .collect()
        }
        Algo::Gdt => {
            ensure!(
                a.lambda.is_empty() && explicit.is_none(),
                "--lambda and --sp-* apply only to --algo sp"
            );
            dyadic_complexity(&sizes, split)?
        }
        Algo::Ref => bail!("opcount supports --algo gdt and --algo sp"),
    };
    let mut out = csv_sink(a.out_csv.as_deref())?;
    out.write_record(["n", "lambda", "sp_size", "additions", "normalized"])?;
    for p in points {
        out.write_record([
            p.n.to_string(),
            lambda_cell(p.lambda),
            p.sp_size.to_string(),
            p.additions.to_string(),
            decimal(p.normalized),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn sp_size(a: &SpSizeArgs) -> Result<()> {
    if let Some(sizes) = &a.sizes {
        let sizes = parse_sizes(sizes)?;
        let mut out = csv_sink(a.out_csv.as_deref())?;
        out.write_record(["n", "lambda", "sp_size"])?;
        for p in size_curve(&a.lambda, &sizes)? {
            out.write_record([p.n.to_string(), decimal(p.lambda), p.sp_size.to_string()])?;
        }
        out.flush()?;
        return Ok(());
    }
    let w = a.width.expect("clap enforces --width without --sizes");
    for &lambda in &a.lambda {
        let r = superpixel_size(w, lambda)?;
        let closed = lambert_root(w, lambda).map_or_else(|| "none".into(), decimal);
        println!(
            "width={w} lambda={} sp_size={} real_root={} closed_form_root={closed}",
            decimal(lambda),
            r.chosen_size,
            decimal(r.real_root)
        );
    }
    Ok(())
}

fn plot_csv(a: &PlotArgs) -> Result<()> {
    let table = plot::Table::read(&a.in_csv)?;
    let series = table.series(&a.x, &a.y, a.group.as_deref())?;
    let svg = plot::render(&series, &a.x, &a.y.join(", "));
    std::fs::write(&a.out_svg, svg)
        .with_context(|| format!("cannot write {}", a.out_svg.display()))?;
    Ok(())
}
