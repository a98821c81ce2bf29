//! One L-function end to end.
//!
//! Builds the X_222 curve over F_5(t), twists it by t + 2, and walks the
//! whole pipeline: reduction types at the bad places, the degree of L, the
//! exact integer coefficients, the root number, and the analytic rank — with
//! the extra-level functional-equation verification switched on.
//!
//! Run with `cargo run --example lfunction`.

use ellff::{compute_l, named_curve, CacheStore, ComputeOpts, CurveId, TableStrategy};

fn main() -> ellff::Result<()> {
    let q = 5;
    let base = named_curve(CurveId::X222, q)?;
    let f = ellff::poly_from_str(q, "t+2")?;
    let curve = base.make_twist(&f)?;
    println!("base curve X222 over F_{q}(t), twisted by f = {f}");
    println!("  a = {}", curve.a());
    println!("  b = {}", curve.b());

    let info = curve.reduction_info()?;
    for (place, t) in info.places() {
        println!("  place {place}: {t}");
    }
    println!(
        "  deg M = {}, deg A = {}, so deg L = {}",
        info.deg_m(),
        info.deg_a(),
        info.l_degree()?
    );

    let store = CacheStore::new(std::env::temp_dir().join("ellff-example-cache"));
    let opts = ComputeOpts {
        verify: true,
        strategy: TableStrategy::TwistOf { base: &base, f: &f },
    };
    let l = compute_l(&curve, &store, &opts)?;
    println!("L = {l}");
    println!("coefficients: {}", l.coeff_list_string());
    println!("sign = {:+}, analytic rank = {}", l.sign(), l.rank());
    Ok(())
}
