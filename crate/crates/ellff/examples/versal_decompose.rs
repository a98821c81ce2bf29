//! Every non-isotrivial curve is a quadratic twist of a pullback of the
//! versal curve; `decompose` recovers that structure from the model alone.
//!
//! Assembles a curve the long way round (pull the versal family back along
//! theta = t^2 + 2, twist by 2t + 4), then takes the finished model apart
//! again and checks the round trip is literal. The decomposition doubles as
//! the fast path for the L-function: the curve's trace tables are derived
//! from the pullback's instead of being recounted from scratch.
//!
//! Run with `cargo run --example versal_decompose`.

use ellff::{
    compute_l, poly_from_str, rational_from_str, versal_curve, CacheStore, ComputeOpts,
    TableStrategy,
};

fn main() -> ellff::Result<()> {
    let q = 5;
    let versal = versal_curve(q)?;
    let theta = rational_from_str(q, "t^2+2")?;
    let pullback = versal.make_pullback(&theta)?;
    let f = poly_from_str(q, "2*t+4")?;
    let curve = pullback.make_twist(&f)?;
    println!("curve: a = {}, b = {}", curve.a(), curve.b());

    // The pullback map is the j-invariant, and the exact twist factor falls
    // out of the ratio (a0 b)/(a b0) of the two minimal models.
    let dec = curve.decompose()?;
    let factor = dec.twist_factor();
    println!("theta = {}", dec.theta);
    println!("twist factor = {factor}");
    println!(
        "square class of the scalar = {} ({})",
        dec.scalar_class,
        if dec.scalar_class == 1 { "square" } else { "non-square" }
    );
    assert_eq!(dec.theta, theta);
    assert_eq!(factor, f);
    assert_eq!(dec.pullback.make_twist(&factor)?, curve);
    println!("round trip: the pullback twisted by the factor is the model, literally");

    // The decomposition is also the fast road to L. The monic part of the
    // factor rides the twist derivation (one cheap pass over the pullback's
    // tables); the non-square scalar then just flips T to -T.
    let store = CacheStore::new(std::env::temp_dir().join("ellff-example-cache"));
    let half = dec.pullback.make_twist(&dec.twist_poly)?;
    let l_half = compute_l(
        &half,
        &store,
        &ComputeOpts {
            verify: true,
            strategy: TableStrategy::TwistOf {
                base: &dec.pullback,
                f: &dec.twist_poly,
            },
        },
    )?;
    let l = compute_l(&curve, &store, &ComputeOpts::default())?;
    assert_eq!(l.degree(), l_half.degree());
    for i in 0..=l.degree() {
        if i % 2 == 1 {
            assert_eq!(*l.coeff(i), -l_half.coeff(i));
        } else {
            assert_eq!(l.coeff(i), l_half.coeff(i));
        }
    }
    println!("L of the monic twist = {l_half}");
    println!("L of the curve       = {l} (the same, with T negated)");
    println!("sign = {:+}, rank = {}", l.sign(), l.rank());
    Ok(())
}
