// temporary timing probe
use gquot::{verify, Budget};
fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let report = verify::run_suite(&args, 0, &Budget::default()).unwrap();
    for r in &report {
        println!("{}: {} ({} ms)", r.check_id, r.status.name(), r.elapsed.as_millis());
        if r.status.name() != "pass" { println!("  details: {}", r.details); }
    }
}
