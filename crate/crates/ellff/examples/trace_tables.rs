//! Trace tables up close: direct builds, the twist fast path, and the cache.
//!
//! Prints the full level-1 table of the versal curve over F_5 (six entries:
//! the five finite points and infinity), then shows that deriving a twisted
//! table from the base table gives byte-for-byte the same result as counting
//! the twisted curve's points directly, and finishes with a look at what the
//! on-disk cache stores.
//!
//! Run with `cargo run --example trace_tables`.

use ellff::tables::{build_direct, derive_twist, EntryStatus};
use ellff::{named_curve, versal_curve, CacheStore, CurveId};

fn main() -> ellff::Result<()> {
    let q = 5;
    let versal = versal_curve(q)?;
    let table = build_direct(&versal, 1)?;
    println!("versal curve over F_{q}, level 1 ({} entries):", table.len());
    for i in 0..table.len() {
        let label = if i < q as usize {
            format!("t = {i}")
        } else {
            "t = inf".to_string()
        };
        let status = match table.status(i) {
            EntryStatus::Good => "good",
            EntryStatus::Mult => "node",
            EntryStatus::Add => "cusp",
        };
        println!("  {label}: {status}, a = {}", table.value(i));
    }
    println!("  b_1 = {} (the flat sum)", table.flat_sum());

    // The twist fast path: one pass over the base table instead of a fresh
    // point count.
    let base = named_curve(CurveId::X222, q)?;
    let f = ellff::poly_from_str(q, "t^2+2")?;
    let twisted = base.make_twist(&f)?;
    for n in 1..=3 {
        let base_table = build_direct(&base, n)?;
        let derived = derive_twist(&base_table, &base, &f)?;
        let direct = build_direct(&twisted, n)?;
        assert_eq!(derived, direct);
        println!(
            "level {n}: twist by {f} derived from the base table matches the \
             direct count ({} entries, b_{n} = {})",
            derived.len(),
            derived.flat_sum()
        );
    }

    // Cached tables persist as one text file per (curve, level).
    let dir = std::env::temp_dir().join("ellff-example-cache");
    let store = CacheStore::new(&dir);
    let path = store.save(&table)?;
    println!("cached level-1 table at {}", path.display());
    let reloaded = store
        .load(&versal.curve_key(), q, 1)?
        .expect("just written");
    assert_eq!(reloaded, table);
    println!(
        "reloaded and revalidated; cached levels now: {:?}",
        store.cached_levels(&versal.curve_key())
    );
    Ok(())
}
