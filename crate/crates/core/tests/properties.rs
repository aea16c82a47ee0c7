mod common;

use proptest::prelude::*;
use truckroute::generator::allocate_goods;
use truckroute::model::travel_time_min;
use truckroute::router::SegmentKind;
use truckroute::{
    emit_dot, generate, parse_dot, solve, GeneratorParams, NodeKind, SolveStatus, SolverParams,
};

fn params() -> impl Strategy<Value = GeneratorParams> {
    (
        6usize..41,
        1usize..5,
        1usize..4,
        1usize..6,
        1u32..200,
        1u32..200,
        any::<u64>(),
    )
        .prop_map(
            |(
                total_nodes,
                max_edges_per_node,
                num_warehouses,
                num_stores,
                total_supply,
                total_demand,
                seed,
            )| {
                GeneratorParams {
                    total_nodes,
                    max_edges_per_node,
                    num_stores: num_stores.min(total_nodes - num_warehouses),
                    num_warehouses,
                    total_supply,
                    total_demand,
                    seed,
                    ..GeneratorParams::default()
                }
            },
        )
}

fn solver() -> impl Strategy<Value = (u32, f64, u32)> {
    (
        1u32..40,
        prop_oneof![Just(0.0), Just(0.5), Just(1.0), 0.0f64..=1.0],
        0u32..40,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dot_round_trip(p in params()) {
        let g = generate(&p).unwrap();
        let text = emit_dot(&g);
        let back = parse_dot(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_dot(&back), text);
    }

    #[test]
    fn generation_is_deterministic(p in params()) {
        prop_assert_eq!(emit_dot(&generate(&p).unwrap()), emit_dot(&generate(&p).unwrap()));
    }

    #[test]
    fn generated_shape(p in params()) {
        let g = generate(&p).unwrap();
        prop_assert!(g.validate().is_empty());
        prop_assert_eq!(common::components(&g), 1);
        prop_assert_eq!(g.node_count(), p.total_nodes);
        prop_assert_eq!(g.count_kind(NodeKind::Warehouse), p.num_warehouses);
        prop_assert_eq!(g.count_kind(NodeKind::Store), p.num_stores);
        prop_assert_eq!(g.total_supply(), u64::from(p.total_supply));
        prop_assert_eq!(g.total_demand(), u64::from(p.total_demand));
        for e in g.edges() {
            prop_assert!(e.velocity_kmh >= p.velocity_min && e.velocity_kmh <= p.velocity_max);
            prop_assert_eq!(e.time_min, travel_time_min(e.distance_km, e.velocity_kmh));
            let (a, b) = (g.node(e.a), g.node(e.b));
            prop_assert!(((a.x - b.x).hypot(a.y - b.y) - e.distance_km).abs() < 1e-9);
        }
    }

    #[test]
    fn allocation_is_balanced(total in 0u32..10_000, bins in 1usize..50) {
        let v = allocate_goods(total, bins).unwrap();
        prop_assert_eq!(v.len(), bins);
        prop_assert_eq!(v.iter().map(|&x| u64::from(x)).sum::<u64>(), u64::from(total));
        let (lo, hi) = (*v.iter().min().unwrap(), *v.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn time_truncates(distance in 0.0f64..5000.0, velocity in 1u32..200) {
        let t = travel_time_min(distance, velocity);
        let exact = distance / f64::from(velocity) * 60.0;
        prop_assert!(f64::from(t) <= exact && exact < f64::from(t) + 1.0);
    }

    #[test]
    fn router_invariants(p in params(), (cap, threshold, load) in solver()) {
        let g = generate(&p).unwrap();
        let sp = SolverParams {
            start_node: (p.seed % p.total_nodes as u64) as usize,
            initial_load: load.min(cap),
            max_capacity: cap,
            threshold,
        };
        let o = solve(&g, &sp).unwrap();
        let budget = g.total_supply() + u64::from(sp.initial_load);
        prop_assert!(o.segments.len() as u64 <= g.total_supply() + g.total_demand());
        for s in &o.segments {
            prop_assert!(s.moved_units > 0);
            prop_assert!(s.load_after <= cap);
            prop_assert_eq!(s.remaining_supply + u64::from(s.load_after) + s.delivered_so_far, budget);
            prop_assert_eq!(g.total_demand() - s.remaining_demand, s.delivered_so_far);
            match s.kind {
                SegmentKind::Restock => prop_assert_eq!(s.load_after, s.load_before + s.moved_units),
                SegmentKind::Ship => prop_assert_eq!(s.load_after + s.moved_units, s.load_before),
            }
        }
        prop_assert_eq!(o.delivered_total, budget.min(g.total_demand()));
        match o.status {
            SolveStatus::Complete => prop_assert_eq!(o.remaining_demand, 0),
            SolveStatus::Partial => {
                prop_assert!(o.remaining_demand > 0);
                prop_assert_eq!(o.remaining_supply, 0);
                prop_assert_eq!(o.truck_load_final, 0);
            }
        }
    }
}
