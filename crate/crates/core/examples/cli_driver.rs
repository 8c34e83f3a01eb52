//! Drives the command-line front end in-process and prints the JSON report.

fn main() {
    let (code, out) = procong::cli::run(["procong", "nt", "analyze", "two_pa_swap.json", "--upto", "4", "--json"]);
    println!("exit {code}");
    print!("{out}");
}
