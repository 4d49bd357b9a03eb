fn main() {
    let rec = wpdiff::scenarios::run_preset("fig1").expect("fig1");
    println!("fig1 notes: {:?}", rec.notes);
    let cmp = rec.comparison.as_ref().unwrap();
    println!(
        "fig1 cmp: max_abs={:.3e} scale={:.3e} ratio={:.4} peak_rel={:.5} offsets={:?} matched={} unmatched={}",
        cmp.max_abs,
        cmp.scale,
        cmp.max_abs / cmp.scale,
        cmp.peak_rel,
        cmp.offsets,
        cmp.matched,
        cmp.unmatched
    );
    let pr = rec.peak_report.as_ref().unwrap();
    println!("fig1 peaks(full): count={} pos={:?}", pr.count, pr.positions);
    println!("fig1 spacings={:?} heights={:?}", pr.spacings, pr.heights);
}
