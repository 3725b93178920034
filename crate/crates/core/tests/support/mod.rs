pub mod random_lp;
pub mod textbook;
