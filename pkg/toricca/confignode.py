#!/usr/bin/env python
# Configuration data validated against the bundled schema
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import yaml

from toricca.configtypes import coerce_scalar, get_json_type, is_type_match
from toricca.schema import SchemaNode


class ConfigNodeError(RuntimeError):
    def __init__(self, message, key=None):
        RuntimeError.__init__(self, message)
        # top-level configuration key the error is about
        self.key = key


class ConfigNode(object):
    """
    ConfigNode stores configuration data checked against a schema.  Each
    node of the tree gets tied to a SchemaNode.  Files are read with YAML,
    which also reads JSON.
    """

    def __init__(self, key=None, parent=None, filename=None, data=None,
                 schemanode=None, schemafile=None):
        self.filename = filename
        self.key = key
        self.parent = parent
        if self.parent is None:
            self.depth = 0
        else:
            self.depth = self.parent.get_depth() + 1

        if filename is not None and data is None:
            self.load_from_file()
        else:
            self.data = data

        if schemanode is None:
            schemanode = SchemaNode(key=key, filename=schemafile)
        self.schemanode = schemanode
        self.children = []

        self._coerce()
        self._check_value()
        self.attach_schema_node(schemanode)

    def load_from_file(self):
        try:
            with open(self.filename, 'r') as f:
                self.data = yaml.safe_load(f)
        except OSError as inst:
            raise ConfigNodeError("Cannot read %s: %s" %
                                  (self.filename, inst.strerror or inst))
        except yaml.YAMLError as inst:
            raise ConfigNodeError("Error in %s: %s" % (self.filename, inst))
        if self.data is None:
            self.data = {}

    def _fail(self, message):
        raise ConfigNodeError(message, key=self.get_config_key())

    def _coerce(self):
        schematype = self.schemanode.get_type()
        try:
            self.data = coerce_scalar(self.data, schematype)
        except ValueError:
            self._fail("Malformed %s: \"%s\" in %s%s" %
                       (schematype, self.data, self.get_filename_text(),
                        self.get_id_string()))

    def _check_value(self):
        schemanode = self.schemanode
        if not is_type_match(self.data, schemanode.get_type()):
            self._fail("Type mismatch in %s%s - type: %s schematype: %s" %
                       (self.get_filename_text(), self.get_id_string(),
                        get_json_type(self.data), schemanode.get_type()))
        if self.data is None:
            return
        if schemanode.is_enum() and self.data not in schemanode.enum_options():
            self._fail("Invalid value: \"%s\" in %s%s.  Choices: %s" %
                       (self.data, self.get_filename_text(),
                        self.get_id_string(),
                        ", ".join(schemanode.enum_options())))
        minimum = schemanode.get_minimum()
        if (minimum is not None and not isinstance(self.data, bool) and
                isinstance(self.data, (int, float)) and self.data < minimum):
            self._fail("Invalid value: %s in %s%s.  Minimum: %s" %
                       (self.data, self.get_filename_text(),
                        self.get_id_string(), minimum))

    def attach_schema_node(self, schemanode):
        '''Pair this data node to the corresponding part of the schema'''
        if self.data is None:
            return
        if schemanode.is_type('object'):
            self.children = {}
            schemakeys = schemanode.get_child_keys()
            for subkey, subdata in self.data.items():
                if subkey not in schemakeys:
                    if not schemanode.allow_additional_properties():
                        validkeys = ", ".join(schemakeys)
                        raise ConfigNodeError(
                            "Invalid key: \"%s\" in %s%s.  Valid keys: %s" %
                            (subkey, self.get_filename_text(),
                             self.get_id_string(), validkeys),
                            key=subkey if self.depth == 0 else
                            self.get_config_key())
                    continue
                self.children[subkey] = ConfigNode(
                    key=subkey, data=subdata, parent=self,
                    schemanode=schemanode.get_child(subkey))
            for subkey in schemakeys:
                if (subkey not in self.children and
                        schemanode.get_child(subkey).is_required()):
                    raise ConfigNodeError("Missing key: \"%s\" in %s%s" %
                                          (subkey, self.get_filename_text(),
                                           self.get_id_string()), key=subkey)
        elif schemanode.is_type('array'):
            self.children = [ConfigNode(key=i, data=subdata, parent=self,
                                        schemanode=schemanode.get_child(i))
                             for i, subdata in enumerate(self.data)]

    def get_depth(self):
        return self.depth

    def get_key(self):
        return self.key

    def get_filename(self):
        if self.parent is None:
            return self.filename
        return self.parent.get_filename()

    def get_filename_text(self):
        filename = self.get_filename()
        if filename is None:
            return "configuration"
        return filename

    def get_config_key(self):
        """Key of the top-level entry this node belongs to"""
        node = self
        while node.depth > 1:
            node = node.parent
        return node.key if node.depth == 1 else None

    def get_id_string(self):
        idchain = []
        node = self
        while node.get_key() is not None:
            idchain.insert(0, str(node.get_key()))
            node = node.parent
        if not idchain:
            return ""
        return "[" + "][".join(idchain) + "]"

    def get_data(self):
        """The validated data, numbers given as strings converted"""
        if isinstance(self.children, dict) and self.data is not None:
            return dict((key, self.children[key].get_data())
                        for key in self.get_child_keys())
        elif self.schemanode.is_type('array') and self.data is not None:
            return [child.get_data() for child in self.children]
        return self.data

    def is_type(self, cmptype):
        return self.schemanode.is_type(cmptype)

    def get_child_keys(self):
        """Keys in schema order"""
        if isinstance(self.children, dict):
            return [key for key in self.schemanode.get_child_keys()
                    if key in self.children]
        return list(range(len(self.children)))

    def get_child(self, key):
        return self.children[key]

    def get_title(self):
        schematitle = self.schemanode.get_title()
        if self.depth > 0 and self.parent.is_type('array'):
            return "%s #%i" % (schematitle, self.get_key() + 1)
        return schematitle

    def get_description(self):
        return self.schemanode.get_description()

    def is_enum(self):
        return self.schemanode.is_enum()

    def enum_options(self):
        return self.schemanode.enum_options()
