// Classify colors against the bundled hue partition and check that it sums to one.
use colorlab::color::{ColorModelId, Rgb8};
use colorlab::fuzzy::{classify, validate_partition, FuzzyColorSpace};
use colorlab::transforms::ConversionContext;

pub fn run_example() -> Vec<(String, Vec<(String, f64)>)> {
    let space = FuzzyColorSpace::bundled();
    let ctx = ConversionContext::default();
    let mut out = Vec::new();
    for hex in ["#ff8000", "#20b2aa", "#8a2be2"] {
        let hsi = ctx.forward_rgb8(ColorModelId::Hsi, Rgb8::from_hex(hex).expect("hex"));
        let memberships = classify(&space, &hsi).expect("hsi coordinate");
        println!("{hex} h={:.1}: {memberships:?}", hsi.c1());
        out.push((hex.to_owned(), memberships));
    }
    let report = validate_partition(&space, 1_000);
    println!("max deviation from 1: {:.2e}", report.max_deviation);
    out
}

#[allow(dead_code)]
fn main() {
    run_example();
}
