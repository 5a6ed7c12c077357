use std::io::{self, Write};

use probnull_core::ComputeResponse;

use crate::args::OutputFormat;

pub fn compute<W: Write>(
    out: &mut W,
    resp: &ComputeResponse,
    format: OutputFormat,
) -> io::Result<()> {
    let prior = &resp.prior;
    let post = &resp.posterior;
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, resp)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            writeln!(out, "kind,mean,ci_lo,ci_hi,ci_level,n,seed")?;
            writeln!(
                out,
                "prior,{},{},{},{},,",
                prior.mean, prior.ci[0], prior.ci[1], prior.ci_level
            )?;
            writeln!(
                out,
                "posterior,{},{},{},{},{},{}",
                post.mean, post.ci[0], post.ci[1], post.ci_level, post.n, post.seed
            )
        }
        OutputFormat::Table => {
            let pct = (post.ci_level * 100.0).round();
            writeln!(out, "seed  {}", post.seed)?;
            writeln!(out, "n     {}", post.n)?;
            writeln!(out)?;
            writeln!(out, "{:<10} {:>9} {:>9} {:>9}", "", "mean", "lo", "hi")?;
            for (name, mean, ci) in [
                ("prior", prior.mean, prior.ci),
                ("posterior", post.mean, post.ci),
            ] {
                writeln!(out, "{name:<10} {mean:>9.4} {:>9.4} {:>9.4}", ci[0], ci[1])?;
            }
            writeln!(out)?;
            writeln!(out, "lo/hi bound the equal-tailed {pct}% credible interval")
        }
    }
}
