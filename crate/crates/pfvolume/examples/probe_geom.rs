use std::time::Instant;
use pfvolume::algebra::{parse_polynomial, rat, VarSet};
use pfvolume::geometry::{relevant_critical_values, ConvexBodySpec};

fn main() {
    let names: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let vs = VarSet::new(names.clone());
    let polys: Vec<_> = ["1 - x^2 - y^2 - z^2", "1 - (x-1)^2 - y^2 - z^2"]
        .iter().map(|s| parse_polynomial(s, &vs).unwrap()).collect();
    let body = ConvexBodySpec::new(polys, names.clone(), None);
    for axis in ["x", "y"] {
        let t0 = Instant::now();
        match relevant_critical_values(&body, &rat(1, 1000), axis) {
            Ok(r) => println!("{axis}: case {:?} elapsed {:?}", r.case_used, t0.elapsed()),
            Err(e) => println!("{axis}: ERR {e} elapsed {:?}", t0.elapsed()),
        }
    }
}
