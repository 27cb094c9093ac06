use designwalk::design::{
    format_incidence, gen_paley_design, gen_projective_plane, load_incidence, save_incidence,
};
use designwalk::Error;

#[test]
fn saved_designs_load_identically() {
    let dir = tempfile::tempdir().unwrap();
    for inc in [gen_projective_plane(5).unwrap(), gen_paley_design(19).unwrap()] {
        let path = dir.path().join("design.txt");
        save_incidence(&inc, &path).unwrap();
        let back = load_incidence(&path).unwrap();
        assert_eq!(format_incidence(&back), format_incidence(&inc));
        assert_eq!(back.params(), inc.params());
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_incidence(dir.path().join("absent.txt")).unwrap_err();
    assert!(matches!(err, Error::Io(_)), "{err:?}");
}
