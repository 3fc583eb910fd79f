#!/usr/bin/env python
# Echoing configuration as YAML with comments pulled from the schema
#
# Copyright (c) 2026, the toricca developers
# All rights reserved.
# Licensed under BSD-style license.  See LICENSE.txt for details.

import re
import textwrap

import yaml


def confignode_get_comment(confignode, initial_indent='# ',
                           subsequent_indent='#    '):
    """return a comment used in YAML source or other possible sources"""

    comment = confignode.get_title()
    comment += ": "
    comment += confignode.get_description()
    if confignode.is_enum():
        comment += ' Choices: "'
        comment += '", "'.join(confignode.enum_options())
        comment += '"'
    retval = "\n".join(textwrap.wrap(comment, initial_indent=initial_indent,
                                     subsequent_indent=subsequent_indent))
    return retval + "\n"


def _flow(data):
    text = yaml.safe_dump(data, default_flow_style=True, width=float('inf'))
    text = re.sub(r'[\r\n]+\.\.\.[\r\n]+$', '', text)
    return re.sub(r'[\r\n]+$', '', text)


def confignode_to_yaml(confignode):
    """
    Return a flat mapping node as a YAML string, one commented entry per
    key in schema order.  Lists are written inline.
    """
    entries = []
    for key in confignode.get_child_keys():
        child = confignode.get_child(key)
        entries.append(confignode_get_comment(child) +
                       "%s: %s\n" % (_flow(key), _flow(child.get_data())))
    return "\n".join(entries)
