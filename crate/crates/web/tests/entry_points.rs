use serde_json::Value;

const Z12: &str = "[ring]\ncomponents = Z_12\n[module]\norders = 12\n[submodule]\ngenerators = (4)\n\
                   [delta]\nfunction = id\n[phi]\nfunction = power(2)\n";

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_returns_the_verdict() {
    let v = parse(&sprimary_web::classify(Z12));
    assert_eq!(v["payload"]["verdict"]["holds"], true);
    assert_eq!(v["payload"]["delta_s_verdict"]["holds"], false);
}

#[test]
fn lattice_lists_every_submodule() {
    let v = parse(&sprimary_web::lattice(Z12));
    assert_eq!(v["payload"]["count"], 6);
}

#[test]
fn separate_finds_the_quarter_submodule() {
    let v = parse(&sprimary_web::separate(Z12));
    assert_eq!(v["payload"]["found"]["submodule"], "<4>");
}

#[test]
fn rejected_input_becomes_an_error_object() {
    let v = parse(&sprimary_web::classify("[ring]\ncomponents = Q\n"));
    assert!(v["error"].as_str().unwrap().contains("line 2"));
}
