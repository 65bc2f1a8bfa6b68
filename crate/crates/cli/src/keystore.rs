use std::fs::{self, OpenOptions};
use std::io::{ErrorKind as IoKind, Write};
use std::path::{Path, PathBuf};

use proxy_ring::delegation::ProxyKeyMaterial;
use proxy_ring::pbsss::SecretKey;
use proxy_ring::wire;

use crate::Failure;

/// A directory of hex-armored envelopes named `<label>.<slot>.hex`.
pub struct Keystore {
    root: PathBuf,
}

#[derive(Clone, Copy)]
pub enum Slot {
    Secret,
    Public,
    Proxy,
}

impl Slot {
    fn suffix(self) -> &'static str {
        match self {
            Slot::Secret => "sec",
            Slot::Public => "pub",
            Slot::Proxy => "proxy",
        }
    }

    fn is_private(self) -> bool {
        !matches!(self, Slot::Public)
    }
}

pub fn check_label(label: &str) -> Result<(), Failure> {
    let ok = !label.is_empty()
        && label.len() <= 64
        && !label.starts_with('.')
        && label.bytes().all(|b| b.is_ascii_alphanumeric() || b"._-".contains(&b));
    if ok {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "invalid label {label:?}: use 1-64 characters from [A-Za-z0-9._-], not starting with '.'"
        )))
    }
}

impl Keystore {
    pub fn open(root: PathBuf) -> Result<Self, Failure> {
        fs::create_dir_all(&root)
            .map_err(|e| Failure::usage(format!("cannot create keystore {}: {e}", root.display())))?;
        Ok(Keystore { root })
    }

    pub fn path(&self, label: &str, slot: Slot) -> PathBuf {
        self.root.join(format!("{label}.{}.hex", slot.suffix()))
    }

    pub fn exists(&self, label: &str, slot: Slot) -> bool {
        self.path(label, slot).exists()
    }

    /// Writes a new entry. Never overwrites.
    pub fn put(&self, label: &str, slot: Slot, envelope: &[u8]) -> Result<PathBuf, Failure> {
        check_label(label)?;
        let path = self.path(label, slot);
        let mut opts = OpenOptions::new();
        opts.write(true).create_new(true);
        #[cfg(unix)]
        if slot.is_private() {
            use std::os::unix::fs::OpenOptionsExt;
            opts.mode(0o600);
        }
        let mut file = opts.open(&path).map_err(|e| match e.kind() {
            IoKind::AlreadyExists => Failure::usage(format!("label {label:?} already has a {} entry", slot.suffix())),
            _ => Failure::usage(format!("cannot write {}: {e}", path.display())),
        })?;
        file.write_all(wire::armor(envelope).as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    fn get(&self, label: &str, slot: Slot) -> Result<Vec<u8>, Failure> {
        check_label(label)?;
        let path = self.path(label, slot);
        let data = fs::read(&path).map_err(|e| match e.kind() {
            IoKind::NotFound => Failure::usage(format!("no {} entry for label {label:?}", slot.suffix())),
            _ => Failure::usage(format!("cannot read {}: {e}", path.display())),
        })?;
        wire::dearmor(&data).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
    }

    pub fn secret_key(&self, label: &str) -> Result<SecretKey, Failure> {
        let bytes = self.get(label, Slot::Secret)?;
        wire::decode_secret_key(&bytes).map_err(|e| Failure::malformed(format!("secret key {label:?}: {e}")))
    }

    pub fn proxy_key(&self, label: &str) -> Result<ProxyKeyMaterial, Failure> {
        let bytes = self.get(label, Slot::Proxy)?;
        wire::decode_proxy_key(&bytes).map_err(|e| Failure::malformed(format!("proxy key {label:?}: {e}")))
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_envelope(path: &Path) -> Result<Vec<u8>, Failure> {
    wire::read_envelope_bytes(&read_file(path)?).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

/// Hex armor for `.hex` paths, raw bytes otherwise.
pub fn write_envelope(path: &Path, envelope: &[u8]) -> Result<(), Failure> {
    let data = if path.extension().is_some_and(|e| e == "hex") {
        wire::armor(envelope).into_bytes()
    } else {
        envelope.to_vec()
    };
    fs::write(path, data).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}
