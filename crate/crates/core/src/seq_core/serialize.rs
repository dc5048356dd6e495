//! Versioned binary layout for cached prefixes:
//!
//! ```text
//! magic "PTSQ" | version u8 | descriptor len u32 LE | descriptor UTF-8
//! | count u64 LE | count x (len u32 LE | magnitude bytes LE)
//! ```

use std::io::{Read, Write};

use num_bigint::BigUint;

use super::{SeqError, SequenceSpec, Terms};

pub const PREFIX_MAGIC: &[u8; 4] = b"PTSQ";
pub const PREFIX_VERSION: u8 = 1;

pub fn write_terms<W: Write>(terms: &Terms, mut out: W) -> Result<(), SeqError> {
    let descriptor = match terms.spec() {
        Some(spec) => spec.to_string(),
        None => format!("custom:{}:{}", terms.domain_start(), terms.label()),
    };
    out.write_all(PREFIX_MAGIC)?;
    out.write_all(&[PREFIX_VERSION])?;
    out.write_all(&(descriptor.len() as u32).to_le_bytes())?;
    out.write_all(descriptor.as_bytes())?;
    out.write_all(&(terms.values().len() as u64).to_le_bytes())?;
    for v in terms.values() {
        let bytes = v.to_bytes_le();
        out.write_all(&(bytes.len() as u32).to_le_bytes())?;
        out.write_all(&bytes)?;
    }
    Ok(())
}

fn read_exact<R: Read, const N: usize>(input: &mut R) -> Result<[u8; N], SeqError> {
    let mut buf = [0u8; N];
    input.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_terms<R: Read>(mut input: R) -> Result<Terms, SeqError> {
    let magic: [u8; 4] = read_exact(&mut input)?;
    if &magic != PREFIX_MAGIC {
        return Err(SeqError::Format("bad magic".into()));
    }
    let [version] = read_exact::<_, 1>(&mut input)?;
    if version != PREFIX_VERSION {
        return Err(SeqError::Format(format!("unsupported version {version}")));
    }
    let len = u32::from_le_bytes(read_exact(&mut input)?) as usize;
    let mut descriptor = vec![0u8; len];
    input.read_exact(&mut descriptor)?;
    let descriptor =
        String::from_utf8(descriptor).map_err(|_| SeqError::Format("descriptor is not UTF-8".into()))?;
    let count = u64::from_le_bytes(read_exact(&mut input)?);
    let mut values = Vec::new();
    for _ in 0..count {
        let len = u32::from_le_bytes(read_exact(&mut input)?) as usize;
        let mut bytes = vec![0u8; len];
        input.read_exact(&mut bytes)?;
        values.push(BigUint::from_bytes_le(&bytes));
    }
    if let Some(rest) = descriptor.strip_prefix("custom:") {
        let (start, label) = rest
            .split_once(':')
            .ok_or_else(|| SeqError::Format("bad custom descriptor".into()))?;
        let start = start
            .parse()
            .map_err(|_| SeqError::Format("bad custom domain start".into()))?;
        return Ok(Terms::from_values(label, start, values));
    }
    let spec: SequenceSpec = descriptor.parse()?;
    Ok(Terms {
        label: spec.to_string(),
        domain_start: spec.domain_start(),
        spec: Some(spec),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_magic() {
        let data = b"NOPE\x01".to_vec();
        assert!(matches!(read_terms(&data[..]), Err(SeqError::Format(_))));
    }

    #[test]
    fn layout_is_little_endian() {
        let terms = Terms::compute(&SequenceSpec::EulerP, 26).unwrap();
        let mut buf = Vec::new();
        write_terms(&terms, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"PTSQ");
        assert_eq!(buf[4], 1);
        assert_eq!(&buf[5..9], &5u32.to_le_bytes());
        assert_eq!(&buf[9..14], b"euler");
        assert_eq!(&buf[14..22], &27u64.to_le_bytes());
        // last value p(26) = 2436 = 0x0984
        assert_eq!(&buf[buf.len() - 6..], &[2, 0, 0, 0, 0x84, 0x09]);
    }
}
