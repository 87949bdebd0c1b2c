//! Every gallery bundle survives export and reload, and meets its declared expectations.

use std::time::Instant;

use mhcheck::bundle::{Bundle, DefinitionFile, LoadOptions};
use mhcheck::gallery::{make, make::NAMES, GallerySpec};
use mhcheck::window::Sampling;

fn run(spec: &GallerySpec) {
    let start = Instant::now();
    let doc = make(spec).unwrap();
    let text = doc.to_json();
    let back = DefinitionFile::from_json_str(&text).unwrap();
    assert_eq!(back, doc);
    let bundle = Bundle::load(back, LoadOptions::default()).unwrap();
    let reports = bundle.run(&bundle.requests(None).unwrap(), &Sampling::sampled(200, 7));
    let bad: Vec<String> = reports.iter().filter(|r| !r.is_ok()).map(|r| r.to_text()).collect();
    assert!(bad.is_empty(), "{}:\n{}", spec.name, bad.join("\n"));
    eprintln!("{} ({} reports) in {:?}", spec.name, reports.len(), start.elapsed());
}

#[test]
fn every_default_bundle_meets_its_declarations() {
    for name in NAMES {
        run(&GallerySpec::new(name));
    }
}

#[test]
fn parameterized_bundles() {
    run(&GallerySpec::new("A_G").with("group", "Z6").with("subgroup", "0,2,4"));
    run(&GallerySpec::new("A_G").with("group", "Z4").with("subgroup", "0,1,2,3"));
    run(&GallerySpec::new("A_G").with("group", "S3").with("subgroup", "e,(123),(132)"));
    run(&GallerySpec::new("sweedler").with("alpha", "2"));
    run(&GallerySpec::new("group_coaction").with("group", "Z3"));
}
