# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up Output Formatting """

import json
import math

from sobolev_extender.log import LOGGER


class OutputManager:
    """Helper class for managing output to file and console."""

    def __init__(self, out_type="file", filename=None):
        self.out_type = out_type
        self.filename = filename
        if self.out_type == "file":
            self.file_handle = open(filename, "w", newline="\n")
        else:
            self.file_handle = None

    def close(self):
        if self.out_type == "file":
            self.file_handle.close()

    def file_out(self, message):
        self.file_handle.write(message + "\n")

    def console_out(self, message):
        print(message)

    def show(self, message):
        if self.out_type == "file":
            self.file_out(message)
        else:
            self.console_out(message)


def format_number(value):
    """Shortest decimal that reads back as the same double."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return repr(value)
    return str(value)


def _plain(value):
    # numpy scalars and tuples become plain JSON values
    if hasattr(value, "item") and not isinstance(value, (list, dict)):
        return value.item()
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def dump_json(data):
    return json.dumps(_plain(data), sort_keys=True, indent=1, separators=(",", ": "))


def write_json(data, filename):
    with open(filename, "w", newline="\n") as json_file:
        json_file.write(dump_json(data) + "\n")
    LOGGER.debug(f"Wrote {filename}")


class ReportOutput:
    """Output manager for report tables."""

    def __init__(self, filename="console", output_format="csv"):
        self.filename = filename
        self.headings = None
        self.logger = LOGGER.getChild(self.__class__.__name__)
        self.output_format = output_format
        self.format_process = {
            "csv": self.format_csv_data,
        }
        self.type = "console"
        if self.filename != "console":
            self.type = "file"
        self.output_manager = OutputManager(self.type, self.filename)

    def set_headings(self, headings):
        # Headings to be used in output. Headings are a list of fields
        self.headings = headings

    def format_csv_data(self, data):
        # Return csv formatted line
        return ",".join(format_number(entry) for entry in data)

    def send_output(self, data):
        self.output_manager.show(data)

    def generate_output(self, dataset):
        if self.headings is not None:
            self.send_output(self.format_process[self.output_format](self.headings))
        for data_item in dataset:
            self.send_output(self.format_process[self.output_format](data_item))
        self.output_manager.close()
