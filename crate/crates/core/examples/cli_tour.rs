//! Writes a product system, a representation and a polynomial as JSON and
//! runs the command line on them, including a randomized search.

use regdil::cli;
use regdil::gradedspace::{lambda_table, ProductSystem};
use regdil::io::{write_json, PolynomialFile, RepresentationFile, SystemFile};
use regdil::linalg::{c, C64};
use regdil::representation::{scaled_twisted_unitaries, NcPolynomial};

fn main() -> regdil::Result<()> {
    let dir = tempfile::tempdir()?;
    let lambda = lambda_table(2, |_, _| c(-1.0, 0.0));
    let sys = ProductSystem::scalar(&lambda)?;
    let rep = scaled_twisted_unitaries(&lambda, &[C64::from(0.6), C64::from_polar(0.8, 0.3)])?;
    let poly = NcPolynomial::monomial(c(1.0, 0.0), vec![(0, 0), (1, 0)]);
    let system_path = dir.path().join("system.json");
    let rep_path = dir.path().join("rep.json");
    let poly_path = dir.path().join("poly.json");
    write_json(&system_path, &SystemFile::from_system(&sys))?;
    write_json(&rep_path, &RepresentationFile::from_representation(&rep))?;
    write_json(&poly_path, &PolynomialFile::from_polynomial(&poly))?;
    let files = |cmd: &str| -> Vec<String> {
        let mut args = vec!["regdil".to_string(), cmd.to_string()];
        for (flag, path) in [("--system", &system_path), ("--rep", &rep_path)] {
            args.push(flag.into());
            args.push(path.display().to_string());
        }
        args
    };

    let mut dilate = files("dilate");
    dilate.extend(["--box".into(), "2,2".into()]);
    let mut vn = files("vn");
    vn.extend(["--poly".into(), poly_path.display().to_string()]);
    let search: Vec<String> = "regdil search --family commuting --k 3 --h 2 --trials 200 --seed 0"
        .split(' ')
        .map(String::from)
        .collect();
    let mut runs: Vec<Vec<String>> = ["validate", "brehmer", "dcheck", "comp-identities"].map(files).into();
    runs.extend([dilate, vn, search]);
    for args in runs {
        println!(
            "$ {}",
            args[1..].join(" ").replace(&*dir.path().display().to_string(), ".")
        );
        println!("  exit {}\n", cli::run(&args));
    }
    Ok(())
}
