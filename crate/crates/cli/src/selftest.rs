use std::fmt::Write as _;

use clap::Parser;
use lodha_moore::ErrorKind;

use crate::{run, Cli, Failure};

/// `(name, argv, substrings the output must contain)`.
const CORPUS: &[(&str, &[&str], &[&str])] = &[
    (
        "y001 on 00101101(0)*",
        &["eval", "-n", "2", "y[001]", "00101101(0)*"],
        &["001y01101(0)*", "= 0011001y1", "image 001100111(0)*"],
    ),
    ("y^2 chain n=3", &["transduce", "-n", "3", "yy(00002)*"], &["(02222)*"]),
    ("y^2 chain n=4", &["transduce", "-n", "4", "yy(00003)*"], &["(03333)*"]),
    (
        "exponent two",
        &["transduce", "-n", "4", "y0y02y'3y0(0)*"],
        &["exponent 2"],
    ),
    ("exponent zero", &["transduce", "-n", "4", "y1(0)*"], &["exponent 0"]),
    ("embed x0[1]", &["embed", "--from", "2", "--to", "5", "x0[1]"], &["x0[4]"]),
    ("embed y[10]", &["embed", "--from", "2", "--to", "5", "y[10]"], &["y[40]"]),
    ("abelianize y[20]", &["abelianize", "-n", "3", "y[20]"], &["(0, 0, 0, 1)"]),
    ("relator X1^X0 = X2", &["eq", "-n", "2", "X0^-1 X1 X0", "X2"], &["true"]),
    (
        "relator X2^X0 = X4, n=3",
        &["eq", "-n", "3", "X0^-1 X2 X0", "X4"],
        &["true"],
    ),
    ("x0 is not x1", &["eq", "-n", "3", "x0", "x1"], &["false"]),
];

fn case(argv: &[&str]) -> Result<String, String> {
    let cli = Cli::try_parse_from(std::iter::once("g0n").chain(argv.iter().copied()))
        .map_err(|e| e.to_string())?;
    run(&cli.cmd).map_err(|f| f.message)
}

pub fn run_corpus() -> Result<String, Failure> {
    let mut out = String::new();
    let mut failed = 0;
    for (name, argv, want) in CORPUS {
        let verdict = case(argv).and_then(|first| {
            let again = case(argv)?;
            if first != again {
                return Err("output differs between runs".into());
            }
            match want.iter().find(|w| !first.contains(*w)) {
                Some(w) => Err(format!("missing {w:?} in {first:?}")),
                None => Ok(()),
            }
        });
        match verdict {
            Ok(()) => {
                let _ = writeln!(out, "PASS {name}");
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(out, "FAIL {name}: {e}");
            }
        }
    }
    if failed > 0 {
        return Err(Failure {
            kind: ErrorKind::Internal,
            message: format!("{failed} golden case(s) failed\n{out}"),
        });
    }
    let _ = writeln!(out, "{} golden cases passed", CORPUS.len());
    Ok(out)
}
