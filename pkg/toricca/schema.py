#!/usr/bin/env python
# Reading the bundled configuration schema
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import copy
import json
import os

from toricca.configtypes import schemaformat


class ConfigSchemaError(RuntimeError):
    pass


class SchemaNode(object):
    """
    Each SchemaNode instance represents one node in the schema tree.  Object
    properties keep the order they are written in, which is the order
    configuration keys are echoed in.
    """

    def __init__(self, key=None, data=None, filename=None, parent=None):
        self.filename = filename
        if filename is not None and data is None:
            self.load_from_file()
        else:
            self.data = data
        if not isinstance(self.data, dict) or 'type' not in self.data:
            raise ConfigSchemaError("schema node %s has no type" % key)

        self.schemaformat = schemaformat
        self.parent = parent
        self.key = key
        if self.parent is None:
            self.depth = 0
        else:
            self.depth = self.parent.get_depth() + 1

        self.children = {}
        if self.is_type('object'):
            properties = self.data.get(schemaformat.idmap['properties'], {})
            for subkey, subdata in properties.items():
                self.children[subkey] = SchemaNode(key=subkey, data=subdata,
                                                   parent=self)
        elif self.is_type('array'):
            items = self.data[schemaformat.idmap['items']]
            # older v2 schemas wrap the item schema in a list
            if isinstance(items, list):
                items = items[0]
            self.children = [SchemaNode(key=0, data=items, parent=self)]

    def load_from_file(self):
        try:
            with open(self.filename, 'r') as f:
                self.data = json.load(f)
        except (OSError, ValueError) as inst:
            raise ConfigSchemaError("Error in %s: %s" % (self.filename, inst))

    def get_depth(self):
        return self.depth

    def get_key(self):
        return self.key

    def get_title(self):
        if 'title' in self.data:
            return self.data['title']
        elif self.key is not None:
            return str(self.key)
        return str(self.get_type())

    def get_description(self):
        return self.data.get('description', '')

    def get_type(self):
        return self.data['type']

    def is_type(self, cmptype):
        return self.get_type() == self.schemaformat.typemap[cmptype]

    def get_child_keys(self):
        if isinstance(self.children, dict):
            return list(self.children.keys())
        return list(range(len(self.children)))

    def get_child(self, key):
        if self.is_type('object'):
            return self.children[key]
        elif self.is_type('array'):
            return self.children[0]
        raise ConfigSchemaError("%s has no children" % self.get_title())

    def is_enum(self):
        return 'enum' in self.data

    def enum_options(self):
        return self.data['enum']

    def is_required(self):
        return not self.data.get('optional', False)

    def allow_additional_properties(self):
        return self.data.get('additionalProperties', True) is not False

    def has_default(self):
        return 'default' in self.data

    def get_default(self):
        return self.data.get('default')

    def get_minimum(self):
        return self.data.get('minimum')

    def get_defaults(self):
        """Defaults of all properties of an object schema, in schema order"""
        return dict((key, copy.deepcopy(child.get_default()))
                    for key, child in self.children.items()
                    if child.has_default())


def find_system_schema(schemaname):
    """
    Resolve schemaname to a full path.  This allows referencing
    one of the bundled schemas without spelling out the full path.
    """
    return os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "schema", schemaname)
