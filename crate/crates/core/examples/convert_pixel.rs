// Convert one RGB color to every model and back.
use colorlab::color::{ColorModelId, Rgb8};
use colorlab::transforms::ConversionContext;

pub fn run_example() -> Vec<(ColorModelId, Rgb8)> {
    let ctx = ConversionContext::default();
    let orange = Rgb8::new(255, 128, 0);
    let mut back = Vec::new();
    for model in ColorModelId::ALL {
        let coord = ctx.forward_rgb8(model, orange);
        let rgb = ctx.inverse(&coord).to_rgb8();
        println!("{:<6} {:?} -> {}", model.name(), coord.components(), rgb.to_hex());
        back.push((model, rgb));
    }
    back
}

#[allow(dead_code)]
fn main() {
    run_example();
}
