// Build a small PPM gradient, convert it to CIELUV and write the CSV.
use colorlab::color::{ColorModelId, PixelBuffer, Rgb8};
use colorlab::io::ppm::PpmImage;
use colorlab::io::write_coords_csv;
use colorlab::transforms::ConversionContext;

pub fn run_example() -> String {
    let pixels: Vec<Rgb8> = (0..16u8).map(|i| Rgb8::new(i * 17, 255 - i * 17, 64)).collect();
    let image = PpmImage::new(PixelBuffer::new(4, 4, pixels).expect("4x4"));
    let reparsed = PpmImage::parse(&image.to_bytes()).expect("valid ppm");
    let luv = ConversionContext::default().convert_image(reparsed.buffer(), ColorModelId::Luv);
    let mut csv = Vec::new();
    write_coords_csv(&mut csv, ColorModelId::Luv, &luv, 3).expect("write csv");
    let text = String::from_utf8(csv).expect("utf8");
    print!("{text}");
    text
}

#[allow(dead_code)]
fn main() {
    run_example();
}
