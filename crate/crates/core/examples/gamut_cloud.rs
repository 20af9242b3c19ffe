// Sample the RGB cube in HSV for a 3-D scatter plot.
use colorlab::color::ColorModelId;
use colorlab::gamut::sample_gamut;
use colorlab::transforms::ConversionContext;

pub fn run_example() -> usize {
    let cloud = sample_gamut(&ConversionContext::default(), ColorModelId::Hsv, 32).expect("stride");
    let mut csv = Vec::new();
    cloud.write_csv(&mut csv, 3).expect("csv");
    let text = String::from_utf8(csv).expect("utf8");
    for line in text.lines().take(5) {
        println!("{line}");
    }
    println!("... {} points", cloud.rows.len());
    cloud.rows.len()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
