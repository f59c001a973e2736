use soergel::bimod::Calc;
use soergel::hecke::enumerate_group;
use soergel::realization::Realization;
use soergel::ring::RingCtx;
use soergel::rouquier::reduce_pipeline;
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let real = Arc::new(Realization::builtin("a2").unwrap());
    let calc = Calc::new(Arc::new(RingCtx::new(real.clone()).unwrap()));
    let table = enumerate_group(real, 100).unwrap();
    for text in ["s s s s s s", "s s t t s s", "s t s t s t", "s s t s s t s"] {
        let w = calc.ring.real.system.parse_word(text).unwrap();
        let t0 = Instant::now();
        let r = reduce_pipeline(&calc, &w, Some(&table)).unwrap();
        println!(
            "{text}: {} steps, {} survivors, {} loops, {:?}",
            r.reduction.steps,
            r.reduction.reduced.num_summands(),
            r.loops_checked,
            t0.elapsed()
        );
    }
}
