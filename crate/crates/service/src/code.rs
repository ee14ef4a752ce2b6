//! Completion codes: a truncated HMAC-SHA256 over campaign and evaluator.

use hmac::{Hmac, Mac};
use sha2::Sha256;

type HmacSha256 = Hmac<Sha256>;

/// Hex characters in a completion code.
pub const CODE_LEN: usize = 12;

fn mac(key: &[u8], campaign: &str, evaluator: &str) -> HmacSha256 {
    let mut mac = HmacSha256::new_from_slice(key).expect("hmac accepts any key length");
    mac.update(campaign.as_bytes());
    mac.update(&[0]);
    mac.update(evaluator.as_bytes());
    mac
}

pub fn completion_code(key: &[u8], campaign: &str, evaluator: &str) -> String {
    let tag = mac(key, campaign, evaluator).finalize().into_bytes();
    hex::encode(&tag[..CODE_LEN / 2])
}

/// Constant-time check of a code handed in by an evaluator.
pub fn verify_code(key: &[u8], campaign: &str, evaluator: &str, code: &str) -> bool {
    if code.len() != CODE_LEN {
        return false;
    }
    match hex::decode(code.to_ascii_lowercase()) {
        Ok(bytes) => mac(key, campaign, evaluator).verify_truncated_left(&bytes).is_ok(),
        Err(_) => false,
    }
}
