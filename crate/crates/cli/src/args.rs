use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use probnull_core::request::{Shapes, Type2Input};
use probnull_core::{DEFAULT_CI_LEVEL, DEFAULT_N, DEFAULT_SEED};

/// Posterior probability of the null hypothesis given a significant result.
#[derive(Debug, Parser)]
#[command(name = "probnull", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prior and posterior summary for one configuration.
    Compute(ComputeArgs),
    /// Write every builtin scenario, the grid and the Beta prior densities to a directory.
    Paper(PaperArgs),
    /// Run the 3x3x3 prior/power/alpha grid and print it.
    Grid(GridArgs),
    /// Start the HTTP API.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Root seed; printed with every result.
    #[arg(long, env = "PROBNULL_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Beta prior on the probability that the null is true, as "a,b".
    #[arg(long, value_parser = parse_shapes)]
    pub prior: Shapes,
    /// Type I error in (0, 1].
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Type II error: a point value in [0, 1) such as "0.9", or Beta shapes "a,b".
    #[arg(long = "type2", value_parser = parse_type2)]
    pub type2: Type2Input,
    /// Monte Carlo iterations.
    #[arg(long, default_value_t = DEFAULT_N, value_parser = parse_count)]
    pub n: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Credible-interval mass in (0, 1).
    #[arg(long, default_value_t = DEFAULT_CI_LEVEL)]
    pub ci_level: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PaperArgs {
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_N, value_parser = parse_count)]
    pub n: usize,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = DEFAULT_N, value_parser = parse_count)]
    pub n: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
    pub format: GridFormat,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Checked after parsing so an out-of-range port exits with status 1.
    #[arg(long, default_value_t = 8080)]
    pub port: u64,
    /// Makes server-chosen seeds a fixed sequence instead of random.
    #[arg(long, env = "PROBNULL_SEED")]
    pub seed: Option<u64>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two numbers \"a,b\", got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("{t:?} is not a number: {e}"))
    };
    let (a, b) = (num(a)?, num(b)?);
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return Err(format!(
            "Beta shapes must be positive and finite, got {a},{b}"
        ));
    }
    Ok((a, b))
}

pub fn parse_shapes(s: &str) -> Result<Shapes, String> {
    parse_pair(s).map(|(a, b)| Shapes { a, b })
}

/// A comma means Beta shapes, otherwise a point Type II error.
pub fn parse_type2(s: &str) -> Result<Type2Input, String> {
    if s.contains(',') {
        return parse_pair(s).map(|(a, b)| Type2Input::Beta { a, b });
    }
    let point: f64 = s
        .trim()
        .parse()
        .map_err(|e| format!("{s:?} is not a number: {e}"))?;
    if !(0.0..1.0).contains(&point) {
        return Err(format!(
            "point Type II error must lie in [0, 1), got {point}"
        ));
    }
    Ok(Type2Input::Point { point })
}

pub fn parse_alpha(s: &str) -> Result<f64, String> {
    let alpha: f64 = s
        .trim()
        .parse()
        .map_err(|e| format!("{s:?} is not a number: {e}"))?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(format!("Type I error must lie in (0, 1], got {alpha}"));
    }
    Ok(alpha)
}

fn parse_count(s: &str) -> Result<usize, String> {
    let n: usize = s
        .trim()
        .parse()
        .map_err(|e| format!("{s:?} is not a count: {e}"))?;
    if n < 2 {
        return Err(format!("need at least 2 iterations, got {n}"));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type2_forms() {
        assert_eq!(
            parse_type2("0.9").unwrap(),
            Type2Input::Point { point: 0.9 }
        );
        assert_eq!(
            parse_type2("10,4").unwrap(),
            Type2Input::Beta { a: 10.0, b: 4.0 }
        );
        assert_eq!(
            parse_type2(" 2 , 20 ").unwrap(),
            Type2Input::Beta { a: 2.0, b: 20.0 }
        );
        assert!(parse_type2("1").is_err());
        assert!(parse_type2("0,4").is_err());
        assert!(parse_type2("x").is_err());
    }

    #[test]
    fn shapes_and_alpha() {
        assert_eq!(parse_shapes("60,6").unwrap(), Shapes { a: 60.0, b: 6.0 });
        assert!(parse_shapes("60").is_err());
        assert!(parse_shapes("-1,6").is_err());
        assert!(parse_alpha("0").is_err());
        assert!(parse_alpha("1").is_ok());
        assert!(parse_count("1").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
