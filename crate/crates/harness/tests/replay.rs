use tourndyn::Tournament;
use tourndyn_harness::gen::{generate_for, GenKind};
use tourndyn_harness::run::{run, RunOptions};
use tourndyn_harness::stream::{Op, StructureKind, UpdateStream};
use tourndyn_harness::verify::{verify, verify_with};
use tourndyn_harness::{campaign, Engine};

fn answers(t: &Tournament, s: &UpdateStream) -> Vec<&'static str> {
    run(t, s, RunOptions::default()).unwrap().into_iter().map(|r| r.ans).collect()
}

#[test]
fn promise_and_full_models_agree() {
    for seed in 0..60 {
        let kind = if seed % 2 == 0 { GenKind::Uniform } else { GenKind::TransitivePlus };
        let (t, s) = generate_for(kind, StructureKind::FastPromise, 12, 3, 60, seed).unwrap();
        let mut full = s.clone();
        full.header.structure = StructureKind::FastFull;
        full.header.g = None;
        assert_eq!(answers(&t, &s), answers(&t, &full), "seed {seed}");
    }
}

#[test]
fn fuzzed_streams_have_no_violations() {
    let jobs: Vec<u64> = (0..600).collect();
    let bad = campaign::map(jobs, |seed| {
        let structure = StructureKind::ALL[seed as usize % 3];
        let kind = match structure {
            StructureKind::Fvst => GenKind::PlantedFvs,
            _ => GenKind::ALL[seed as usize / 3 % 3],
        };
        let n = 2 + seed as usize % 9;
        let (t, s) = generate_for(kind, structure, n, 1 + seed as usize % 3, 30, seed).unwrap();
        let rep = verify(&t, &s).unwrap();
        rep.violations.first().map(|v| format!("{structure} seed {seed}: {}", v.message))
    });
    let bad: Vec<String> = bad.into_iter().flatten().collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn corrupted_structures_are_caught_and_reported_with_a_prefix() {
    for structure in StructureKind::ALL {
        let kind = if structure == StructureKind::Fvst { GenKind::PlantedFvs } else { GenKind::TransitivePlus };
        let (t, mut s) = generate_for(kind, structure, 9, 2, 40, 5).unwrap();
        s.ops.insert(20, Op::Checkpoint);
        let rep = verify_with(&t, &s, &mut |i, e: &mut Engine| {
            if i == 20 {
                e.corrupt_for_test();
            }
        })
        .unwrap();
        let v = &rep.violations[0];
        assert_eq!(v.op, 20, "{structure}");
        assert!(v.message.contains("audit"), "{}", v.message);
        assert_eq!(v.reproduction.ops, s.ops[..=20].to_vec());
        assert_eq!(v.reproduction.header.seed, s.header.seed);
    }
}

#[test]
fn promise_violations_surface_in_verify() {
    let t = Tournament::transitive(4);
    let s = UpdateStream::parse("STRUCT fvst N 4 K 0 G 0 SEED 0\nQ 0\nR 0 3\nR 1 2\nQ 0\n").unwrap();
    let rep = verify(&t, &s).unwrap();
    assert_eq!(rep.violations.len(), 1);
    assert!(rep.violations[0].reproduction.ops.len() <= 2);
}
