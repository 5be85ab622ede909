import io
import os
import sys

import pandas as pd
import yaml

METADATA_PREFIX = "# "


def load_yaml(yaml_path):
    with open(yaml_path) as f:
        yaml_file = yaml.load(f, Loader=yaml.FullLoader)
    return yaml_file if yaml_file is not None else {}


def save_yaml(yaml_file, filepath):
    with open(filepath, "w") as outfile:
        yaml.dump(yaml_file, outfile, default_flow_style=False)


def create_folder(folder_path):
    if folder_path and not os.path.exists(folder_path):
        os.makedirs(folder_path)


def format_table(frame: pd.DataFrame, metadata=None, float_format="%.10g"):
    """
    Render a table as CSV text preceded by one ``# key: value`` line per metadata entry.
    :param frame: rows to write, one column per field
    :param metadata: ordered mapping written as the preamble
    :param float_format: printf format applied to every float cell
    :return: the full text
    """
    lines = []
    for k, v in (metadata or {}).items():
        lines.append("%s%s: %s\n" % (METADATA_PREFIX, k, v))
    body = frame.to_csv(index=False, float_format=float_format)
    return "".join(lines) + body


def write_table(frame: pd.DataFrame, filepath=None, metadata=None, float_format="%.10g"):
    text = format_table(frame, metadata=metadata, float_format=float_format)
    if filepath is None:
        sys.stdout.write(text)
        return
    create_folder(os.path.dirname(os.path.abspath(filepath)))
    with open(filepath, "w", newline="") as f:
        f.write(text)


def read_table(filepath):
    metadata = {}
    data_lines = []
    with open(filepath) as f:
        for line in f:
            if line.startswith(METADATA_PREFIX.strip()):
                key, _, value = line[len(METADATA_PREFIX) :].rstrip("\n").partition(": ")
                metadata[key] = value
            else:
                data_lines.append(line)
    frame = pd.read_csv(io.StringIO("".join(data_lines)))
    return metadata, frame
