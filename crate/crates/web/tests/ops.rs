use relcat_web::{homology_text, segal_text, zigzag_text};

fn corpus(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/../../corpus/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn homology_of_bz2() {
    let text = homology_text(&corpus("bz2"), 3).unwrap();
    assert!(
        text.contains("H_0 = Z, H_1 = Z/2, H_2 = 0, H_3 = Z/2"),
        "{text}"
    );
}

#[test]
fn zigzags_of_the_counterexample() {
    let text = zigzag_text(&corpus("c2of3"), "[-1;1;-1]", "0", "1").unwrap();
    assert!(text.contains("maximum"), "{text}");
}

#[test]
fn segal_on_the_counterexample() {
    let text = segal_text(&corpus("c2of3"), 2, 1, 2).unwrap();
    assert!(
        text.contains("three-arrow calculus (K = 2, d = 2): pass"),
        "{text}"
    );
    assert!(text.contains("Segal square n = 1 (d = 2): pass"), "{text}");
}

#[test]
fn errors_are_messages() {
    assert!(homology_text("{", 2).is_err());
    let err = zigzag_text(&corpus("c2of3"), "-1,1,-1", "0", "nowhere").unwrap_err();
    assert!(err.contains("nowhere"), "{err}");
}
