//! Runs every example so they cannot rot, and checks the headline result of
//! each.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }
    };
}

example!(temporal_graph);
example!(ingest_log);
example!(activity_features);
example!(owa_weights);
example!(table1_sweep);
example!(opsahl_baseline);
example!(interval_degree);
example!(rank_plot);

use chat_owa::NodeId;

fn id(s: &str) -> NodeId {
    NodeId::new(s).unwrap()
}

#[test]
fn temporal_graph_runs() {
    let w = temporal_graph::run_example().unwrap();
    assert_eq!(w.total_statements(), 7);
    assert_eq!(w.degree_inplusout(&id("A")).unwrap(), 4);
}

#[test]
fn ingest_log_runs() {
    assert_eq!(ingest_log::run_example().unwrap(), 5);
}

#[test]
fn activity_features_runs() {
    let m = activity_features::run_example().unwrap();
    assert_eq!(m.node_count(), 6);
    assert_eq!(m.feature_names(), ["a1", "a2", "a3", "a4"]);
}

#[test]
fn owa_weights_runs() {
    let scores = owa_weights::run_example().unwrap();
    assert!((scores[0] - 0.196).abs() < 1e-12);
    assert!((scores[2] - 0.12075).abs() < 1e-12);
    assert!(scores.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn table1_sweep_runs() {
    let t = table1_sweep::run_example().unwrap();
    assert_eq!(t.grid.len(), 51);
    assert!(t.get(&id("Therapist")).unwrap().ranks.iter().all(|r| *r == 33));
}

#[test]
fn opsahl_baseline_runs() {
    assert!((opsahl_baseline::run_example().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn interval_degree_runs() {
    let t = interval_degree::run_example().unwrap();
    let steady = &t.get(&id("steady")).unwrap().ranks;
    let burst = &t.get(&id("burst")).unwrap().ranks;
    assert!(burst[0] > steady[0]);
    assert!(steady[2] > burst[2]);
}

#[test]
fn rank_plot_runs() {
    let svg = rank_plot::run_example().unwrap();
    assert_eq!(svg.matches("<polyline").count(), 33);
    assert_eq!(svg.matches(r#"class="trajectory highlight""#).count(), 3);
}
