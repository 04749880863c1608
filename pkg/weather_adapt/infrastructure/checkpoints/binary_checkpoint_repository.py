"""Checkpoints em contêiner binário com índice JSON."""
import json
import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from weather_adapt.application.interfaces.repositories.checkpoint_repository import (
    CheckpointRepository,
)

logger = logging.getLogger(__name__)

MAGIC = b"WACKPT01"
DATA_DTYPE = "<f8"
_LENGTH = struct.Struct("<Q")


class BinaryCheckpointRepository(CheckpointRepository):
    """
    Contêiner de tensores nomeados.

    Layout: ``MAGIC``, comprimento do índice (uint64 little-endian),
    índice JSON e, em seguida, os dados float64 little-endian de cada
    tensor na ordem do índice.
    """

    def save(self, path: Path, arrays: Mapping[str, np.ndarray], metadata: Mapping[str, Any]) -> None:
        """Salva tensores (posto <= 2) e metadados de forma atômica."""
        entries = []
        blobs = []
        offset = 0
        for name, array in arrays.items():
            data = np.ascontiguousarray(np.asarray(array, dtype=DATA_DTYPE))
            if data.ndim > 2:
                raise ValueError(f"Tensor '{name}' com posto {data.ndim} não suportado (máximo 2)")
            blob = data.tobytes()
            entries.append({"name": name, "shape": list(data.shape), "offset": offset, "nbytes": len(blob)})
            blobs.append(blob)
            offset += len(blob)
        index = json.dumps({"tensors": entries, "metadata": dict(metadata)}, sort_keys=True).encode("utf-8")

        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(MAGIC)
                handle.write(_LENGTH.pack(len(index)))
                handle.write(index)
                for blob in blobs:
                    handle.write(blob)
            os.replace(tmp_name, path)
        except Exception as e:
            logger.error(f"Erro ao salvar checkpoint '{path}': {e}", exc_info=True)
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        logger.info(f"Checkpoint salvo: '{path}' ({len(entries)} tensores, {offset} bytes)")

    def load(self, path: Path) -> tuple[dict[str, np.ndarray], dict[str, Any]]:
        """Carrega tensores e metadados."""
        payload = path.read_bytes()
        header_size = len(MAGIC) + _LENGTH.size
        if len(payload) < header_size or payload[: len(MAGIC)] != MAGIC:
            raise ValueError(f"Arquivo não é um checkpoint válido: '{path}'")
        (index_length,) = _LENGTH.unpack_from(payload, len(MAGIC))
        data_start = header_size + index_length
        try:
            index = json.loads(payload[header_size:data_start].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ValueError(f"Índice de checkpoint corrompido em '{path}': {e}") from e

        arrays: dict[str, np.ndarray] = {}
        for entry in index["tensors"]:
            start = data_start + entry["offset"]
            end = start + entry["nbytes"]
            if end > len(payload):
                raise ValueError(f"Checkpoint truncado em '{path}' (tensor '{entry['name']}')")
            values = np.frombuffer(payload[start:end], dtype=DATA_DTYPE)
            arrays[entry["name"]] = values.reshape(entry["shape"]).astype(np.float64)
        logger.debug(f"Checkpoint carregado: '{path}' ({len(arrays)} tensores)")
        return arrays, dict(index.get("metadata", {}))
