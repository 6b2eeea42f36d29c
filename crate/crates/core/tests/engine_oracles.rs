//! Engine runs checked against independent hand-built oracles.

use proptest::prelude::*;

use typesched::engine::{
    inversion_counts, run_nonpreemptive, run_processor_sharing, run_sequence, run_slotted, NonPreemptiveView,
    Selector, SharingController, SharingView, SlotDecision, SlotOutcome, SlotPolicy, SlotView,
};
use typesched::model::{sample_instance, Instance, JobId, TypeParams};
use typesched::policies::{opt_order, run_policy, Policy, PolicyConfig, RoundRobin};

fn all_jobs(inst: &Instance) -> Vec<JobId> {
    (0..inst.k())
        .flat_map(|k| (0..inst.n()).map(move |i| JobId::new(k, i)))
        .collect()
}

/// Flow time of running `order` back to back.
fn sequential_flow(inst: &Instance, order: &[JobId]) -> f64 {
    let mut t = 0.0;
    order
        .iter()
        .map(|&j| {
            t += inst.size(j);
            t
        })
        .sum()
}

fn permutations(items: &[JobId]) -> Vec<Vec<JobId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[test]
fn fixed_order_hand_computation() {
    let inst = Instance::from_columns(&[vec![2.0], vec![1.0]]).unwrap();
    let trace = run_sequence(&inst, &[JobId::new(0, 0), JobId::new(1, 0)]).unwrap();
    assert_eq!((trace.end(JobId::new(0, 0)), trace.end(JobId::new(1, 0))), (2.0, 3.0));
    assert_eq!(trace.flow_time(), 5.0);
}

#[test]
fn opt_on_three_jobs() {
    let inst = Instance::from_columns(&[vec![3.0], vec![1.0], vec![2.0]]).unwrap();
    let trace = run_sequence(&inst, &opt_order(&inst)).unwrap();
    assert_eq!(trace.flow_time(), 10.0);
}

#[test]
fn sharing_two_jobs_hand_computation() {
    let inst = Instance::from_columns(&[vec![1.0], vec![2.0]]).unwrap();
    let trace = run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap();
    assert_eq!((trace.end(JobId::new(0, 0)), trace.end(JobId::new(1, 0))), (2.0, 3.0));
    let inst = Instance::from_columns(&[vec![4.0]]).unwrap();
    assert_eq!(run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap().flow_time(), 4.0);
}

struct Fixed(Vec<usize>, usize);

impl Selector for Fixed {
    fn select(&mut self, _view: &NonPreemptiveView<'_>) -> usize {
        self.1 += 1;
        self.0[self.1 - 1]
    }
}

/// Shares the processor among the current jobs of one type only, following
/// a fixed type order.
struct Singleton(Vec<usize>);

impl SharingController for Singleton {
    fn active_jobs(&mut self, view: &SharingView<'_>, active: &mut Vec<JobId>) {
        let ty = *self.0.iter().find(|&&t| !view.is_exhausted(t)).unwrap();
        active.push(view.current_job(ty).unwrap());
    }
}

/// Records slot outcomes of single-slot decisions on a fixed type.
struct Probe(Vec<(u64, bool)>);

impl SlotPolicy for Probe {
    fn decide(&mut self, view: &SlotView<'_>) -> SlotDecision {
        let ty = view.remaining_types().next().unwrap();
        SlotDecision::Slots { ty, count: 1 }
    }
    fn observe(&mut self, outcome: SlotOutcome, _view: &SlotView<'_>) {
        self.0.push((outcome.slots_used, outcome.completed));
    }
}

#[test]
fn slotted_mid_slot_completion() {
    let inst = Instance::from_columns(&[vec![0.025]]).unwrap();
    let mut probe = Probe(Vec::new());
    let trace = run_slotted(&inst, &mut probe, 0.01).unwrap();
    assert_eq!(probe.0, vec![(1, false), (1, false), (1, true)]);
    assert!((trace.end(JobId::new(0, 0)) - 0.025).abs() < 1e-15);
    assert!(run_slotted(&inst, &mut Probe(Vec::new()), 0.0).is_err());
    assert!(run_slotted(&inst, &mut Probe(Vec::new()), -1.0).is_err());
}

#[test]
fn slot_success_rate_matches_exponential_tail() {
    // Fresh exponential jobs: each slot succeeds with 1 − e^{−Δ/λ}.
    let (delta, lambda) = (0.05, 1.0);
    let params = TypeParams::new(vec![lambda], 4000).unwrap();
    let (mut slots, mut successes) = (0u64, 0u64);
    for seed in 0..10 {
        let inst = sample_instance(&params, seed);
        let mut probe = Probe(Vec::new());
        run_slotted(&inst, &mut probe, delta).unwrap();
        slots += probe.0.len() as u64;
        successes += probe.0.iter().filter(|o| o.1).count() as u64;
    }
    let p = 1.0 - (-delta / lambda).exp();
    let rate = successes as f64 / slots as f64;
    let sigma = (p * (1.0 - p) / slots as f64).sqrt();
    assert!((rate - p).abs() < 3.0 * sigma, "rate {rate} vs {p} over {slots} slots");
}

#[test]
fn race_of_two_shared_types() {
    // With both types sharing, type 0 finishes first w.p. λ₁/(λ₀+λ₁).
    let params = TypeParams::new(vec![1.0, 3.0], 1).unwrap();
    let trials = 20_000;
    let mut first = 0;
    for seed in 0..trials {
        let inst = sample_instance(&params, seed);
        let trace = run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap();
        if trace.end(JobId::new(0, 0)) < trace.end(JobId::new(1, 0)) {
            first += 1;
        }
    }
    let p = 0.75;
    let rate = first as f64 / trials as f64;
    assert!((rate - p).abs() < 3.0 * (p * (1.0 - p) / trials as f64).sqrt());
}

#[test]
fn slot_longer_than_every_job_matches_sequential() {
    let inst = Instance::from_columns(&[vec![0.3, 0.2], vec![0.5, 0.1]]).unwrap();
    struct Order;
    impl SlotPolicy for Order {
        fn decide(&mut self, view: &SlotView<'_>) -> SlotDecision {
            SlotDecision::Slots {
                ty: view.remaining_types().last().unwrap(),
                count: 1,
            }
        }
        fn observe(&mut self, outcome: SlotOutcome, _view: &SlotView<'_>) {
            assert!(outcome.completed);
        }
    }
    let slotted = run_slotted(&inst, &mut Order, 10.0).unwrap();
    let sequential = run_nonpreemptive(&inst, &mut Fixed(vec![1, 1, 0, 0], 0)).unwrap();
    assert_eq!(slotted.flow_time(), sequential.flow_time());
    for j in all_jobs(&inst) {
        assert_eq!(slotted.end(j), sequential.end(j));
    }
}

#[test]
fn inversion_counts_of_ftpp_and_reverse() {
    let params = TypeParams::new(vec![2.0, 0.5], 4).unwrap();
    let inst = sample_instance(&params, 9);
    let ftpp = run_policy(Policy::Ftpp, &inst, &PolicyConfig::default()).unwrap();
    assert_eq!(inversion_counts(&ftpp)[0][1], 0);
    let reverse = run_nonpreemptive(&inst, &mut Fixed(vec![0; 4].into_iter().chain(vec![1; 4]).collect(), 0)).unwrap();
    assert_eq!(inversion_counts(&reverse)[0][1], 16);
}

fn small_instance() -> impl Strategy<Value = Instance> {
    (1usize..=3, 1usize..=2)
        .prop_filter("at most six jobs", |(k, n)| k * n <= 6)
        .prop_flat_map(|(k, n)| prop::collection::vec(prop::collection::vec(0.01f64..5.0, k), n))
        .prop_map(|rows| {
            let k = rows[0].len();
            let columns: Vec<Vec<f64>> = (0..k).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
            Instance::from_columns(&columns).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opt_is_minimal_over_all_orders(inst in small_instance()) {
        let opt = run_sequence(&inst, &opt_order(&inst)).unwrap().flow_time();
        let best = permutations(&all_jobs(&inst))
            .iter()
            .map(|order| sequential_flow(&inst, order))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((opt - best).abs() <= 1e-9 * best);
        for policy in Policy::ALL {
            let flow = run_policy(policy, &inst, &PolicyConfig::default()).unwrap().flow_time();
            prop_assert!(flow >= best * (1.0 - 1e-12), "{policy}: {flow} < {best}");
        }
    }

    #[test]
    fn round_robin_matches_sorted_increments(inst in small_instance()) {
        // The j-th smallest job ends after every smaller job and (N−j+1)
        // copies of its own size.
        let mut sizes: Vec<f64> = all_jobs(&inst).iter().map(|&j| inst.size(j)).collect();
        sizes.sort_by(f64::total_cmp);
        let total = sizes.len();
        let mut before = 0.0;
        let mut expected = 0.0;
        for (j, &p) in sizes.iter().enumerate() {
            expected += before + (total - j) as f64 * p;
            before += p;
        }
        let trace = run_processor_sharing(&inst, &mut RoundRobin::new()).unwrap();
        prop_assert!((trace.flow_time() - expected).abs() <= 1e-9 * expected);
        prop_assert!((trace.makespan() - inst.total_work()).abs() <= 1e-9 * inst.total_work());
    }

    #[test]
    fn singleton_sharing_reproduces_sequential(inst in small_instance(), rotate in 0usize..3) {
        let mut order: Vec<usize> = (0..inst.k()).collect();
        order.rotate_left(rotate % inst.k());
        let shared = run_processor_sharing(&inst, &mut Singleton(order.clone())).unwrap();
        let selections: Vec<usize> = order.iter().flat_map(|&t| std::iter::repeat_n(t, inst.n())).collect();
        let sequential = run_nonpreemptive(&inst, &mut Fixed(selections, 0)).unwrap();
        prop_assert_eq!(shared, sequential);
    }

    #[test]
    fn traces_are_valid_and_work_conserving(lambdas in prop::collection::vec(0.1f64..3.0, 1..4), n in 1usize..8, seed in 0u64..1000) {
        let params = TypeParams::new(lambdas, n).unwrap();
        let inst = sample_instance(&params, seed);
        for policy in Policy::ALL {
            let trace = run_policy(policy, &inst, &PolicyConfig::default()).unwrap();
            prop_assert!(trace.is_consistent_with(&inst, 1e-9), "{}", policy);
            prop_assert!((trace.makespan() - inst.total_work()).abs() <= 1e-9 * inst.total_work(), "{}", policy);
            let flow: f64 = all_jobs(&inst).iter().map(|&j| trace.end(j)).sum();
            prop_assert!((trace.flow_time() - flow).abs() <= 1e-12 * flow);
            let again = run_policy(policy, &inst, &PolicyConfig::default()).unwrap();
            prop_assert_eq!(&trace, &again);
        }
    }
}
