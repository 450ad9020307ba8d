use autolab_core::*;
use autolab_core::families::corpus_source;
use autolab_core::format::parse_automaton;
fn main() {
    for name in ["example3", "example4-fold", "example4-irr", "example6", "example8"] {
        let aut = parse_automaton(corpus_source(name).unwrap()).unwrap();
        let report = report::analyze(&aut, &report::AnalyzeOptions::default()).unwrap();
        println!("{name}: dim={} c_irr={} monoid={} maxdef={:?} lines={:?} reset={:?} sync={} simple={} wd={} wc={:?} contr={:?}",
            report.algebra_dimension, report.c_irreducible, report.monoid.size,
            report.rank_audit.max_deficient_rank,
            report.invariant_lines.iter().map(|l| (l.k, l.rational)).collect::<Vec<_>>(),
            report.shortest_reset_length, report.synchronizing, report.simple,
            report.weakly_defective, report.weakly_contracting, report.contracting);
    }
}
