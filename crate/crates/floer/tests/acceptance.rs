//! Acceptance gate: runs every built-in criterion and prints one line each.

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in floer::selftest::criteria() {
        match (c.run)() {
            Ok(()) => println!("criterion {} ({}): pass", c.index, c.name),
            Err(msg) => {
                println!("criterion {} ({}): FAIL {}", c.index, c.name, msg);
                failures.push(format!("criterion {} ({}): {}", c.index, c.name, msg));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
