use num_bigint::BigInt;
use procong::ntform::shearing_from_slopes;

fn main() -> procong::Result<()> {
    let v = |p: i64, q: i64| (BigInt::from(p), BigInt::from(q));
    for (g, h) in [((1, 0), (0, 1)), ((1, 0), (3, 5)), ((2, 3), (-4, -6)), ((7, 2), (3, 1))] {
        println!("{g:?} {h:?}: {}", shearing_from_slopes(v(g.0, g.1), v(h.0, h.1))?);
    }
    Ok(())
}
