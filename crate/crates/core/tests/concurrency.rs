//! The computation model: operations are pure given their caches, and caches
//! are immutable after construction, so values are shared across threads
//! without synchronization.

use std::thread;

use sumfact::arith::{ArithmeticFunction, Builtin};
use sumfact::matrix::TriangularMatrix;
use sumfact::partition::PartitionCache;
use sumfact::poly::Polynomial;
use sumfact::rat::Rat;
use sumfact::type1::{t_matrix, type1_sum};
use sumfact::type2::{u_inverse_matrix, FHat, WPoint};

#[test]
fn core_types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<ArithmeticFunction>();
    check::<PartitionCache>();
    check::<TriangularMatrix<Rat>>();
    check::<TriangularMatrix<Polynomial>>();
    check::<Polynomial>();
    check::<FHat>();
    check::<WPoint>();
}

#[test]
fn shared_values_agree_across_threads() {
    let f = ArithmeticFunction::builtin(Builtin::Sigma(1), 24);
    let cache = PartitionCache::new(24);
    let t = t_matrix(24);
    let uinv = u_inverse_matrix(&f, 12).unwrap();
    let w = WPoint::new(sumfact::rat::rat(1, 2)).unwrap();

    let baseline: Vec<Rat> = (1..=24).map(|x| type1_sum(&f, x).unwrap()).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                scope.spawn(|| {
                    // Re-derive everything from the shared immutable state.
                    for x in 1..=24u64 {
                        assert_eq!(type1_sum(&f, x).unwrap(), baseline[(x - 1) as usize]);
                    }
                    assert_eq!(cache.p(24), sumfact::partition::partition(24));
                    assert_eq!(t, t_matrix(24));
                    assert_eq!(uinv.eval_at(w.value()).invert().unwrap().dim(), 12);
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    });
}
