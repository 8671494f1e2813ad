# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up File Storage """

import hashlib
import os
import os.path

from sobolev_extender.log import LOGGER
from sobolev_extender.output import write_json

# File store defaults
DISK_LOCATION_DEFAULT = os.path.join(os.getcwd(), "runs", "latest")
MANIFEST = "manifest.json"


class ArtifactStore:
    """
    Output directory of one run. Every artifact is registered so the manifest
    can list it with its digest next to the echoed configuration.
    """

    def __init__(self, location=""):
        self.logger = LOGGER.getChild(self.__class__.__name__)
        self.location = location if len(location) > 0 else DISK_LOCATION_DEFAULT
        self.artifacts = []
        if not os.path.isdir(self.location):
            LOGGER.debug(f"Creating artifact store {self.location}")
            os.makedirs(self.location)
        LOGGER.debug(f"Storage location: {self.location}")

    def path(self, filename):
        """Location of an artifact, registered for the manifest."""
        if filename not in self.artifacts:
            self.artifacts.append(filename)
        return os.path.join(self.location, filename)

    def get_file(self, filename):
        file_location = os.path.join(self.location, filename)
        if not os.path.exists(file_location):
            LOGGER.debug(f"File {filename} not found")
            return None
        return file_location

    def digest(self, filename):
        sha = hashlib.sha256()
        with open(os.path.join(self.location, filename), "rb") as artifact:
            for block in iter(lambda: artifact.read(65536), b""):
                sha.update(block)
        return sha.hexdigest()

    def write_manifest(self, config, status=0):
        entries = [
            {"file": filename, "sha256": self.digest(filename)}
            for filename in sorted(self.artifacts)
            if self.get_file(filename) is not None
        ]
        write_json(
            {"artifacts": entries, "config": config, "status": status},
            os.path.join(self.location, MANIFEST),
        )
        LOGGER.debug(f"Manifest lists {len(entries)} artifacts")
