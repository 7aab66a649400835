//! Run a few verification suites in-process and print their JSON reports.

fn main() {
    let campaigns: &[&[&str]] = &[
        &["verify", "cayley-hamilton", "--trials", "10", "--seed", "1", "--json"],
        &["verify", "hadamard-conjugation", "--ring", "grassmann:3", "--transitive", "P(1,2)", "--trials", "20", "--json"],
        &["verify", "skew-integrality", "--trials", "3", "--json"],
    ];
    for args in campaigns {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = ncdet::cli::run(std::iter::once("ncdet").chain(args.iter().copied()), &mut out, &mut err);
        print!("{}", String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
        println!("exit code {code}");
    }
}
