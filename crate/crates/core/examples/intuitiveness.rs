// Group the published per-model completion times into three intuitiveness classes.
use colorlab::analysis::{replay_published, Intuitiveness, IntuitivenessTable};

pub fn run_example() -> IntuitivenessTable {
    let table = replay_published();
    for class in [Intuitiveness::High, Intuitiveness::Medium, Intuitiveness::Low] {
        let names: Vec<&str> = table
            .rows
            .iter()
            .filter(|r| r.category == class)
            .map(|r| r.model.name())
            .collect();
        println!("{:<7} {}", class.label(), names.join(" "));
    }
    table
}

#[allow(dead_code)]
fn main() {
    run_example();
}
