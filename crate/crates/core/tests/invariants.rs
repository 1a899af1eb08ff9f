use maitred::optimizer::{ClassShape, SegmentClass, ValueTable};
use maitred::strategy::napkinless;
use maitred::{evaluate_seating, run, Dyadic, Enumerator, PreferenceOrder, Segment, Sign, StepLabel, StrategyId, Take};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = PreferenceOrder> {
    (1usize..=40).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
            PreferenceOrder::new(bits.into_iter().map(|r| if r { Sign::Right } else { Sign::Left }).collect())
                .unwrap()
        })
    })
}

fn strategy_id() -> impl Strategy<Value = StrategyId> {
    prop_oneof![Just(StrategyId::W), Just(StrategyId::S), Just(StrategyId::STilde)]
}

proptest! {
    #[test]
    fn napkinless_diners_equal_leftover_napkins(id in strategy_id(), sigma in order()) {
        let out = run(id, sigma.len(), &sigma).unwrap();
        prop_assert_eq!(out.napkinless_count(), out.leftover_napkins());
        prop_assert!(out.napkinless_count() <= sigma.len() / 3);
    }

    #[test]
    fn replaying_the_arrangement_gives_the_same_count(id in strategy_id(), sigma in order()) {
        let out = run(id, sigma.len(), &sigma).unwrap();
        let again = evaluate_seating(&out.arrangement(), &sigma).unwrap();
        prop_assert_eq!(again.napkinless(), out.napkinless());
    }

    #[test]
    fn last_diner_cannot_change_the_count(id in strategy_id(), sigma in order()) {
        prop_assert_eq!(napkinless(id, &sigma), napkinless(id, &sigma.toggled_last()));
    }

    #[test]
    fn trap_setting_is_mirror_symmetric(sigma in order()) {
        prop_assert_eq!(napkinless(StrategyId::W, &sigma), napkinless(StrategyId::W, &sigma.negated()));
    }

    #[test]
    fn second_diner_under_shunning_is_served(sigma in order()) {
        let out = run(StrategyId::S, sigma.len(), &sigma).unwrap();
        for step in out.trace() {
            if step.label == StepLabel::S2 {
                prop_assert_ne!(step.take, Take::None);
            }
        }
    }

    #[test]
    fn mirrored_split_is_the_mirror_of_the_split(
        left in any::<bool>(), right in any::<bool>(), seats in 1usize..30, pos in 1usize..30, pref in any::<bool>()
    ) {
        prop_assume!(pos <= seats);
        let pref = if pref { Sign::Right } else { Sign::Left };
        let seg = Segment::new(left, seats, right);
        let (take, a, b) = seg.place(pos, pref).unwrap();
        let (take_m, am, bm) = seg.mirrored().place(seats + 1 - pos, pref.flip()).unwrap();
        prop_assert_eq!(take_m.side(), take.side().map(Sign::flip));
        prop_assert_eq!((am, bm), (b.mirrored(), a.mirrored()));
        prop_assert_eq!(a.napkin_count() + b.napkin_count() + usize::from(!take.is_none()), seg.napkin_count());
    }
}

#[test]
fn optimal_values_grow_with_the_segment() {
    let table = ValueTable::<Dyadic>::build(60);
    for shape in [ClassShape::Outer, ClassShape::Leaning, ClassShape::Inner] {
        for size in 1..60 {
            let small = table.value(SegmentClass::new(shape, size)).unwrap();
            let big = table.value(SegmentClass::new(shape, size + 1)).unwrap();
            assert!(big >= small, "{} {size}", shape.name());
        }
    }
}

#[test]
fn every_order_counts_once() {
    let en = Enumerator::new();
    for id in StrategyId::ALL {
        for n in 1..=12 {
            let total: u64 = en.distribution(id, n).unwrap().coeffs_u64().iter().sum();
            assert_eq!(total, 1 << n);
        }
    }
}
