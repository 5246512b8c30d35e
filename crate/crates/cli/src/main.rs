use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::Parser;
use endotype_cli::{run_line, Options, Outcome};
use rayon::prelude::*;

/// Endotype of an irreducible module over a real form of a type A or q(n)
/// Lie superalgebra.
#[derive(Parser, Debug)]
#[command(
    name = "endotype",
    version,
    override_usage = "endotype [OPTIONS] [key=value ...]",
    after_help = "Query keys: algebra, borel, form, weight, route.\n\
                  Example: endotype algebra=gl(1|2) borel=edd form=unitary(1,i,i) weight=1+1i, 3/2, -5/2"
)]
struct Args {
    /// File with one query per line ("-" reads stdin).
    #[arg(long)]
    batch: Option<String>,
    /// Cross-check against the other route when it applies.
    #[arg(long)]
    verify: bool,
    /// Print the odd-reflection trace to stderr.
    #[arg(long)]
    verbose: bool,
}

fn print(out: &Outcome, header: Option<&str>, stdout: &mut impl Write) -> io::Result<()> {
    if let Some(h) = header {
        writeln!(stdout, "# {h}")?;
    }
    if let Some(r) = &out.report {
        write!(stdout, "{}", r.emit())?;
    }
    for m in &out.messages {
        if out.code == 0 {
            eprintln!("warning: {m}");
        } else if header.is_some() {
            writeln!(stdout, "error: {m}")?;
        } else {
            eprintln!("error: {m}");
        }
    }
    for t in &out.trace {
        eprintln!("{t}");
    }
    Ok(())
}

/// Splits argv into options for clap and query tokens, which may start
/// with '-' (negative weights).
fn split_argv() -> (Vec<String>, Vec<String>) {
    let mut argv = std::env::args();
    let mut flags: Vec<String> = argv.next().into_iter().collect();
    let mut query = Vec::new();
    while let Some(a) = argv.next() {
        if a == "--batch" {
            flags.push(a);
            flags.extend(argv.next());
        } else if a.starts_with("--") || a == "-h" || a == "-V" {
            flags.push(a);
        } else {
            query.push(a);
        }
    }
    (flags, query)
}

fn main() -> ExitCode {
    let (flags, query) = split_argv();
    let args = match Args::try_parse_from(flags) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let opts = Options { verbose: args.verbose, verify: args.verify };
    let mut stdout = io::stdout().lock();
    let code = match &args.batch {
        Some(path) => {
            let text = if path == "-" {
                io::stdin().lock().lines().collect::<io::Result<Vec<_>>>().map(|l| l.join("\n"))
            } else {
                std::fs::read_to_string(path)
            };
            let text = match text {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {path}: {e}");
                    return ExitCode::from(1);
                }
            };
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
            let outs: Vec<Outcome> = lines.par_iter().map(|l| run_line(l, opts)).collect();
            let mut worst = 0;
            for (i, (line, out)) in lines.iter().zip(&outs).enumerate() {
                if i > 0 {
                    let _ = writeln!(stdout);
                }
                let _ = print(out, Some(line), &mut stdout);
                worst = worst.max(out.code);
            }
            worst
        }
        None => {
            if query.is_empty() {
                eprintln!("error: no query given; try `endotype algebra=gl(1|1) form=split weight=5,7`");
                return ExitCode::from(1);
            }
            let out = run_line(&query.join(" "), opts);
            let _ = print(&out, None, &mut stdout);
            out.code
        }
    };
    ExitCode::from(code as u8)
}
