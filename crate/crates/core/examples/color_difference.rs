// Compare CIE76, CIE94 and CIEDE2000 on a few pairs.
use colorlab::metrics::{
    delta_e_2000, delta_e_76, delta_e_94, delta_e_94_with, Cie94Constants, DeltaEParams, Lab, LabPair,
};

pub fn run_example() -> Vec<[f64; 4]> {
    let params = DeltaEParams::default();
    let pairs = [
        LabPair::new(Lab::new(50.0, 0.0, 0.0), Lab::new(50.0, 3.0, 4.0)),
        LabPair::new(Lab::new(50.0, 2.6772, -79.7751), Lab::new(50.0, 0.0, -82.7485)),
        LabPair::new(Lab::new(50.0, 0.0, 0.0), Lab::new(60.0, 0.0, 0.0)),
    ];
    println!("{:>8} {:>8} {:>8} {:>10}", "76", "94", "2000", "94 textile");
    pairs
        .iter()
        .map(|p| {
            let row = [
                delta_e_76(p),
                delta_e_94(p, &params),
                delta_e_2000(p, &params),
                delta_e_94_with(p, &params, &Cie94Constants::TEXTILES),
            ];
            println!("{:>8.4} {:>8.4} {:>8.4} {:>10.4}", row[0], row[1], row[2], row[3]);
            row
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
