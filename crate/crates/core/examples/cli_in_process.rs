//! Driving the command-line interface in-process, as the binary does.

fn main() {
    for args in [
        &[
            "qfrac", "coeffs", "--q", "1/2", "--x", "1/3", "--y", "1/5", "-M", "4", "--format",
            "text",
        ][..],
        &[
            "qfrac", "expand", "--q", "1/2", "--x", "1/3", "--y", "1/5", "-M", "2", "-N", "2",
            "--format", "csv",
        ][..],
        &["qfrac", "coeffs", "--q", "1/2", "--x", "1/3", "--y", "1"][..],
    ] {
        let out = qfrac::cli::run_args(args);
        println!("$ {}", args.join(" "));
        print!("{}", out.stdout);
        eprint!("{}", out.stderr);
        println!("exit {}\n", out.exit_code);
    }
}
