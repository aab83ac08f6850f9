use heegaard_links::diagram::{parse_braid_text, to_braid_text};
use heegaard_links::export::{to_gauss, to_pd};
use heegaard_links::{build_template, crossing_census, fill, FillingSystem};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-40i64..=-1, 1i64..=40]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arbitrary_slopes_keep_census_and_components(
        (n, l) in (4usize..=7).prop_flat_map(|n| {
            let divisors: Vec<usize> = (1..=n).filter(|l| n % l == 0).collect();
            (Just(n), proptest::sample::select(divisors))
        }),
        s_q in nonzero(),
        loop_slopes in proptest::collection::vec(nonzero(), 130),
    ) {
        let t = build_template(n, l).unwrap();
        let mut f = FillingSystem::uniform(&t, 1);
        f.s_q = s_q;
        for (lp, s) in t.loops.iter().zip(&loop_slopes) {
            f.s_loops.insert(lp.step, *s);
        }
        let d = fill(&t, &f).unwrap();
        prop_assert_eq!(d.crossing_total as u64, crossing_census(&t, &f).unwrap());
        prop_assert_eq!(d.components(), l);
        prop_assert!(to_pd(&d).check().is_ok());
        prop_assert_eq!(to_gauss(&d).to_pd(), to_pd(&d));
        let (head, back) = parse_braid_text(&to_braid_text(&d, l)).unwrap();
        prop_assert_eq!(head.components, l);
        prop_assert_eq!(back.braid_word, d.braid_word);
    }
}

#[test]
fn template_json_round_trips() {
    let t = build_template(8, 4).unwrap();
    let text = serde_json::to_string(&t).unwrap();
    let back: heegaard_links::LinkTemplate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, t);
}
