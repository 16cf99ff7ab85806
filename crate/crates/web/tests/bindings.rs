use svbr_web::{drawing, equality, matching_report, product};

const GADGET: &str = "colors: 2\nF-: (1 (2 _ _) (2 _ _))\nb: B4: 2\nF+: (2 (1 _ _) (1 _ _))\n";
const ID: &str = "colors: 2\nF-: _\nb: B1: e\nF+: _\n";

#[test]
fn page_defaults() {
    assert!(equality(GADGET, ID, 10_000).unwrap().starts_with("Equal"));
    let p = product(GADGET, ID).unwrap();
    assert!(drawing(&p).unwrap().starts_with("<svg"));
    let h = matching_report("K7", 2).unwrap();
    assert!(h.contains("H~_1 = Z/3\nH~_2 = Z^20\n"));
    assert!(h.contains("pass: 0-acyclic + connected check"));
}

#[test]
fn errors_are_messages() {
    assert!(product("colors: 2", ID).unwrap_err().starts_with("first diagram"));
    assert!(matching_report("K12", 2).unwrap_err().contains("40 edges"));
    assert!(equality(GADGET, "colors: 3\nF-: _\nb: B1: e\nF+: _\n", 10).unwrap().starts_with("NotEqual"));
}
