//! `g0n`: normal forms, evaluation and embeddings in the n-adic Lodha–Moore
//! group from the command line.

mod dot;
mod selftest;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lodha_moore::cantor::{Alphabet, EvPeriodicWord};
use lodha_moore::homomorphisms::{abelianize, embed, ArityPair};
use lodha_moore::lodha_moore::{
    calculation_of, evaluate_form, exponent_of_element_at, normalize, parse_word, NormalForm,
};
use lodha_moore::transducer::{exponent, parse_calculation, substitute_all};
use lodha_moore::{Error, ErrorKind};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "g0n", version, about = "Word problem and action of the n-adic Lodha–Moore group")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Arity; may be omitted when the word starts with `n=<arity>`.
    #[arg(short = 'n', long = "arity")]
    pub n: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print the normal form of a word.
    Normalize {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Decide whether two words represent the same element.
    Eq {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Act on an eventually periodic point such as `0(01)*`.
    Eval {
        #[command(flatten)]
        common: Common,
        word: String,
        point: String,
        /// Substitution steps of the calculation to show.
        #[arg(long, default_value_t = 8)]
        trace: usize,
    },
    /// Exponent of the normal form at a point.
    Exponent {
        #[command(flatten)]
        common: Common,
        word: String,
        point: String,
    },
    /// Run the transducer on a calculation such as `y0y'2(0)*`.
    Transduce {
        #[command(flatten)]
        common: Common,
        calculation: String,
    },
    /// Apply the embedding between arities `p` and `q`.
    Embed {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        json: bool,
        word: String,
    },
    /// Image in Z^{n+1}.
    Abelianize {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Graphviz drawing of the normal form.
    Draw {
        #[arg(short = 'n', long = "arity")]
        n: Option<usize>,
        word: String,
    },
    /// Run the bundled golden corpus.
    Selftest,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

pub fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Parse => "parse",
        ErrorKind::Domain => "domain",
        ErrorKind::Internal => "internal",
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 2,
        ErrorKind::Domain => 3,
        ErrorKind::Internal => 4,
    }
}

fn word_nf(text: &str, n: Option<usize>) -> Result<NormalForm, Failure> {
    Ok(normalize(&parse_word(text, n)?)?)
}

fn point(alphabet: Alphabet, text: &str) -> Result<EvPeriodicWord, Failure> {
    Ok(EvPeriodicWord::parse(alphabet, text)?)
}

fn arity(n: Option<usize>) -> Result<Alphabet, Failure> {
    let n = n.ok_or(Failure {
        kind: ErrorKind::Parse,
        message: "arity required: pass -n".into(),
    })?;
    Ok(Alphabet::new(n)?)
}

pub fn form_json(g: &NormalForm) -> Value {
    let f: Vec<Value> = g
        .f()
        .domain_leaves()
        .zip(g.f().range_leaves())
        .map(|(d, r)| json!([d, r]))
        .collect();
    let ys: Vec<Value> = g
        .ys()
        .iter()
        .map(|y| json!([y.index().letters(), y.exponent()]))
        .collect();
    json!({
        "schema": 1,
        "arity": g.alphabet().arity(),
        "f": f,
        "ys": ys,
        "text": g.to_string(),
    })
}

fn emit(json: bool, value: Value, text: String) -> String {
    if json {
        format!("{value}\n")
    } else {
        text
    }
}

/// Runs one command and returns what it prints on success.
pub fn run(cmd: &Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Normalize { common, word } => {
            let g = word_nf(word, common.n)?;
            Ok(emit(common.json, form_json(&g), format!("{g}\n")))
        }
        Cmd::Eq { common, left, right } => {
            let a = word_nf(left, common.n)?;
            let b = word_nf(right, common.n)?;
            let same = a == b;
            let v = json!({"schema": 1, "equal": same, "left": form_json(&a), "right": form_json(&b)});
            Ok(emit(common.json, v, format!("{same}\n")))
        }
        Cmd::Eval { common, word, point: p, trace } => {
            let g = word_nf(word, common.n)?;
            let x = point(g.alphabet(), p)?;
            let c = calculation_of(g.form(), &x)?;
            let mut steps = vec![c.to_string()];
            let mut cur = c.clone();
            while steps.len() <= *trace && cur.y_count() > 0 {
                match cur.substitute_once() {
                    Some(next) => {
                        steps.push(next.to_string());
                        cur = next;
                    }
                    None => break,
                }
            }
            let image = evaluate_form(g.form(), &x)?;
            let mut text = String::new();
            for (i, s) in steps.iter().enumerate() {
                let _ = writeln!(text, "{} {s}", if i == 0 { " " } else { "=" });
            }
            let _ = writeln!(text, "image {image}");
            let v = json!({"schema": 1, "form": form_json(&g), "point": x.to_string(),
                "calculation": steps, "image": image.to_string()});
            Ok(emit(common.json, v, text))
        }
        Cmd::Exponent { common, word, point: p } => {
            let g = word_nf(word, common.n)?;
            let x = point(g.alphabet(), p)?;
            let e = exponent_of_element_at(g.form(), &x)?;
            let v = json!({"schema": 1, "exponent": e});
            Ok(emit(common.json, v, format!("{e}\n")))
        }
        Cmd::Transduce { common, calculation } => {
            let c = parse_calculation(arity(common.n)?, calculation)?;
            let out = substitute_all(&c);
            let e = exponent(&c);
            let e_text = match &e {
                Ok(k) => k.to_string(),
                Err(err) => format!("undefined ({err})"),
            };
            let v = json!({"schema": 1, "output": out.to_string(),
                "exponent": e.as_ref().ok()});
            Ok(emit(common.json, v, format!("{out}\nexponent {e_text}\n")))
        }
        Cmd::Embed { from, to, json, word } => {
            let pair = ArityPair::new(*from, *to)?;
            let g = word_nf(word, Some(*from))?;
            let h = embed(&pair, &g)?;
            Ok(emit(*json, form_json(&h), format!("{h}\n")))
        }
        Cmd::Abelianize { common, word } => {
            let g = word_nf(word, common.n)?;
            let v = abelianize(&g);
            let parts: Vec<String> = v.iter().map(|k| k.to_string()).collect();
            let out = json!({"schema": 1, "vector": v});
            Ok(emit(common.json, out, format!("({})\n", parts.join(", "))))
        }
        Cmd::Draw { n, word } => {
            let g = word_nf(word, *n)?;
            Ok(dot::draw(&g))
        }
        Cmd::Selftest => selftest::run_corpus(),
    }
}

fn json_flag(cmd: &Cmd) -> bool {
    match cmd {
        Cmd::Normalize { common, .. }
        | Cmd::Eq { common, .. }
        | Cmd::Eval { common, .. }
        | Cmd::Exponent { common, .. }
        | Cmd::Transduce { common, .. }
        | Cmd::Abelianize { common, .. } => common.json,
        Cmd::Embed { json, .. } => *json,
        Cmd::Draw { .. } | Cmd::Selftest => false,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let kind = kind_name(f.kind);
            if json_flag(&cli.cmd) {
                println!("{}", json!({"schema": 1, "error": {"kind": kind, "message": f.message}}));
            }
            eprintln!("error ({kind}): {}", f.message);
            ExitCode::from(exit_code(f.kind))
        }
    }
}
