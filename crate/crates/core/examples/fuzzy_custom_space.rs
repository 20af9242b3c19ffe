// Define a three-label space in TOML with a Gaussian saturation term.
use colorlab::color::{ColorCoord, ColorModelId};
use colorlab::fuzzy::{classify, FuzzyColorSpace};

const SPACE: &str = r#"
name = "warm-cool"
model = "hsv"
partition = "none"

[[color]]
label = "warm"
h = { kind = "trapezoidal", params = [300.0, 330.0, 60.0, 90.0] }
s = { kind = "gaussian", params = [1.0, 0.35] }
x = { kind = "trapezoidal", params = [0.0, 0.2, 1.0, 1.0] }

[[color]]
label = "cool"
h = { kind = "trapezoidal", params = [120.0, 150.0, 240.0, 270.0] }
s = { kind = "gaussian", params = [1.0, 0.35] }
x = { kind = "trapezoidal", params = [0.0, 0.2, 1.0, 1.0] }
combiner = "product"

[[color]]
label = "muted"
h = { kind = "trapezoidal", params = [0.0, 0.0, 360.0, 360.0] }
s = { kind = "triangular", params = [0.0, 0.0, 0.3] }
x = { kind = "trapezoidal", params = [0.0, 0.0, 1.0, 1.0] }
"#;

pub fn run_example() -> Vec<(String, f64)> {
    let space = FuzzyColorSpace::from_config_str(SPACE).expect("valid space");
    let c = ColorCoord::new(ColorModelId::Hsv, &[20.0, 0.9, 0.8]).expect("coordinate");
    let result = classify(&space, &c).expect("hsv");
    println!("{result:?}");
    print!("{}", space.to_config_string());
    result
}

#[allow(dead_code)]
fn main() {
    run_example();
}
