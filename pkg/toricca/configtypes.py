#!/usr/bin/env python
"""Schema type names and type checks for configuration data"""

import math


class ConfigTypeError(RuntimeError):
    pass


# draft v2 type names, as written in toricca/schema/*.json
class schemaformat:
    version = 2
    typemap = {"string": "string",
               "object": "object",
               "array": "array",
               "boolean": "boolean",
               "number": "number",
               "integer": "integer",
               "any": "any",
               "null": "null"}
    idmap = {"properties": "properties",
             "items": "items"}


def get_json_type(data, fmt=schemaformat):
    """Given an arbitrary piece of data, return the type as represented in
       json schemas."""
    if isinstance(data, str):
        return fmt.typemap['string']
    elif isinstance(data, bool):
        return fmt.typemap['boolean']
    elif isinstance(data, int):
        return fmt.typemap['integer']
    elif isinstance(data, float):
        return fmt.typemap['number']
    elif isinstance(data, dict):
        return fmt.typemap['object']
    elif isinstance(data, list):
        return fmt.typemap['array']
    elif data is None:
        return fmt.typemap['null']
    else:
        raise ConfigTypeError("unknown type: %s" % type(data).__name__)


def is_type_match(data, schematype, fmt=schemaformat):
    """null matches every type; an integer is a number"""
    datatype = get_json_type(data, fmt)
    return (schematype == fmt.typemap['any'] or
            datatype == schematype or
            datatype == fmt.typemap['null'] or
            (datatype == fmt.typemap['integer'] and
             schematype == fmt.typemap['number']))


def coerce_scalar(data, schematype, fmt=schemaformat):
    """
    Convert a string to the schema's numeric type.  Command-line values
    arrive as strings, and YAML 1.1 reads "1e-3" as one too.  Raises
    ValueError for malformed numbers.
    """
    if not isinstance(data, str):
        return data
    if schematype == fmt.typemap['integer']:
        return int(data)
    if schematype == fmt.typemap['number']:
        value = float(data)
        if not math.isfinite(value):
            raise ValueError("not a finite number: %s" % data)
        return value
    return data
