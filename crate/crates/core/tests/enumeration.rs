use superrough::sweep::{lattices, posets};

#[test]
fn eight_element_lattices() {
    assert_eq!(lattices(8).len(), 222);
}

#[test]
fn six_element_posets() {
    assert_eq!(posets(6).len(), 318);
}
