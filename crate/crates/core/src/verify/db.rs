//! Index database files.
//!
//! Layout: the magic bytes `FNA-IDXDB`, a version byte, the vertex count `n`
//! as one byte, the record count as a little-endian `u64`, then each encoded
//! key as a little-endian `u16` length followed by its bytes. Records are
//! strictly increasing in bytewise order, so equal databases give equal files.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::canonical::decode_key;
use crate::error::{Error, Result};
use crate::instances::IndexDatabase;

pub const DB_MAGIC: &[u8; 9] = b"FNA-IDXDB";
pub const DB_VERSION: u8 = 1;

pub fn db_to_bytes(db: &IndexDatabase) -> Vec<u8> {
    let keys = db.sorted_keys();
    let mut out = Vec::with_capacity(19 + keys.iter().map(|k| k.len() + 2).sum::<usize>());
    out.extend_from_slice(DB_MAGIC);
    out.push(DB_VERSION);
    out.push(db.n() as u8);
    out.extend_from_slice(&(keys.len() as u64).to_le_bytes());
    for key in keys {
        out.extend_from_slice(&(key.len() as u16).to_le_bytes());
        out.extend_from_slice(&key);
    }
    out
}

pub fn db_from_bytes(bytes: &[u8]) -> Result<IndexDatabase> {
    let corrupt = |what: &str| Error::Database(what.to_string());
    let rest = bytes.strip_prefix(DB_MAGIC.as_slice()).ok_or_else(|| corrupt("wrong magic header"))?;
    let (&version, rest) = rest.split_first().ok_or_else(|| corrupt("truncated header"))?;
    if version != DB_VERSION {
        return Err(Error::Database(format!("unsupported format version {version}")));
    }
    let (&n, rest) = rest.split_first().ok_or_else(|| corrupt("truncated header"))?;
    let n = n as usize;
    crate::graph::check_n(n)?;
    let (count, mut rest) = rest.split_at_checked(8).ok_or_else(|| corrupt("truncated header"))?;
    let count = u64::from_le_bytes(count.try_into().expect("eight bytes"));
    let mut keys: Vec<Vec<u8>> = Vec::with_capacity(count.min(1 << 20) as usize);
    for i in 0..count {
        let (len, tail) = rest.split_at_checked(2).ok_or_else(|| corrupt("truncated record"))?;
        let len = u16::from_le_bytes([len[0], len[1]]) as usize;
        let (key, tail) = tail.split_at_checked(len).ok_or_else(|| corrupt("truncated record"))?;
        let decoded = decode_key(key).map_err(|e| Error::Database(format!("record {i}: {e}")))?;
        if decoded.n() != n {
            return Err(Error::Database(format!("record {i} is for n = {}, file is for n = {n}", decoded.n())));
        }
        if keys.last().is_some_and(|prev| prev.as_slice() >= key) {
            return Err(Error::Database(format!("record {i} is out of order")));
        }
        keys.push(key.to_vec());
        rest = tail;
    }
    if !rest.is_empty() {
        return Err(corrupt("trailing bytes after the last record"));
    }
    Ok(IndexDatabase::from_keys(n, keys))
}

/// Writes atomically: a sibling temporary file is renamed over `path`.
pub fn db_save(db: &IndexDatabase, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), &db_to_bytes(db))
}

pub fn db_load(path: impl AsRef<Path>) -> Result<IndexDatabase> {
    db_from_bytes(&fs::read(path)?)
}

/// Union of two databases for the same `n`.
pub fn db_merge(a: &IndexDatabase, b: &IndexDatabase) -> Result<IndexDatabase> {
    let out = IndexDatabase::from_keys(a.n(), a.key_set());
    out.merge_from(b)?;
    Ok(out)
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSet;
    use crate::instances::instances_of;

    fn sample(n: usize) -> IndexDatabase {
        let db = IndexDatabase::new(n);
        for s in ["1-2,1-3", "1-2,3-4", "1-2,1-3,2-3", "1-2,1-3,3-4,4-5", "1-2,1-3,1-4,1-5"] {
            for i in instances_of(EdgeSet::parse(n, s).unwrap()) {
                db.check_and_insert(i.key()).unwrap();
            }
        }
        db
    }

    #[test]
    fn round_trip() {
        let db = sample(5);
        let bytes = db_to_bytes(&db);
        assert_eq!(&bytes[..9], b"FNA-IDXDB");
        assert_eq!(bytes[9], DB_VERSION);
        assert_eq!(bytes[10], 5);
        assert_eq!(u64::from_le_bytes(bytes[11..19].try_into().unwrap()), db.len() as u64);
        assert_eq!(db_from_bytes(&bytes).unwrap(), db);
        assert_eq!(db_to_bytes(&db_from_bytes(&bytes).unwrap()), bytes);
    }

    #[test]
    fn files_and_merge() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("keys.db");
        let db = sample(6);
        db_save(&db, &path).unwrap();
        assert_eq!(db_load(&path).unwrap(), db);
        assert_eq!(db_merge(&db, &db).unwrap(), db);
        let other = IndexDatabase::new(6);
        other.check_and_insert(instances_of(EdgeSet::complete(6))[0].key()).unwrap();
        let merged = db_merge(&db, &other).unwrap();
        assert_eq!(merged.len(), db.len() + 1);
        assert!(db_merge(&db, &sample(5)).is_err());
    }

    #[test]
    fn rejects_corruption() {
        let bytes = db_to_bytes(&sample(5));
        let mut wrong_magic = bytes.clone();
        wrong_magic[0] = b'X';
        assert!(db_from_bytes(&wrong_magic).is_err());
        let mut wrong_version = bytes.clone();
        wrong_version[9] = 99;
        assert!(db_from_bytes(&wrong_version).is_err());
        let mut wrong_n = bytes.clone();
        wrong_n[10] = 6;
        assert!(db_from_bytes(&wrong_n).is_err());
        assert!(db_from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut trailing = bytes.clone();
        trailing.push(0);
        assert!(db_from_bytes(&trailing).is_err());
        let mut garbled = bytes.clone();
        garbled[21] ^= 0xff;
        assert!(db_from_bytes(&garbled).is_err());
    }
}
