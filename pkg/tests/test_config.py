import pytest

from toricca.configtypes import coerce_scalar, is_type_match
from toricca.confignode import ConfigNode, ConfigNodeError
from toricca.runconfig import (SELFTEST_SEED, ConfigError, echo_config,
                               load_schema, parse_config)
from toricca.schema import ConfigSchemaError, SchemaNode


class TestSchema:
    def setup_method(self):
        self.schema = load_schema()

    def test_create(self):
        assert self.schema.is_type('object')
        assert not self.schema.allow_additional_properties()
        assert self.schema.get_child('sizes').is_type('array')
        assert self.schema.get_child('sizes').get_child(0).is_type('integer')

    def test_defaults(self):
        defaults = self.schema.get_defaults()
        assert defaults['gamma2'] == 1.0
        assert defaults['sizes'] == [8, 16]
        assert defaults['subcommand'] is None
        defaults['sizes'].append(32)
        assert self.schema.get_defaults()['sizes'] == [8, 16]

    def test_enum(self):
        node = self.schema.get_child('field_update')
        assert node.is_enum()
        assert node.enum_options() == ['sync', 'async']

    def test_untyped(self):
        with pytest.raises(ConfigSchemaError):
            SchemaNode(data={'title': 'nothing'})


class TestConfigTypes:
    def test_coerce(self):
        assert coerce_scalar('1e-3', 'number') == 0.001
        assert coerce_scalar('12', 'integer') == 12
        assert coerce_scalar('sync', 'string') == 'sync'
        assert coerce_scalar(5, 'number') == 5
        with pytest.raises(ValueError):
            coerce_scalar('fast', 'number')
        with pytest.raises(ValueError):
            coerce_scalar('inf', 'number')

    def test_type_match(self):
        assert is_type_match(3, 'number')
        assert not is_type_match(3.5, 'integer')
        assert is_type_match(None, 'integer')
        assert not is_type_match('3', 'array')


class TestConfigNode:
    def setup_method(self):
        self.schema = load_schema()

    def test_data(self):
        node = ConfigNode(data={'gamma1': ['0.1', 0.2], 'seed': 4},
                          schemanode=self.schema)
        assert node.get_data() == {'gamma1': [0.1, 0.2], 'seed': 4}
        assert node.get_child_keys() == ['gamma1', 'seed']

    def test_invalid_key(self):
        with pytest.raises(ConfigNodeError) as info:
            ConfigNode(data={'gama1': [0.1]}, schemanode=self.schema)
        assert info.value.key == 'gama1'
        assert 'Valid keys' in str(info.value)

    def test_item_key(self):
        with pytest.raises(ConfigNodeError) as info:
            ConfigNode(data={'sizes': [8, 2]}, schemanode=self.schema)
        assert info.value.key == 'sizes'
        assert '[sizes][1]' in str(info.value)

    def test_type_mismatch(self):
        with pytest.raises(ConfigNodeError) as info:
            ConfigNode(data={'trajectories': [200]}, schemanode=self.schema)
        assert info.value.key == 'trajectories'


class TestParseConfig:
    def test_ensemble(self):
        config = parse_config(['ensemble', '-L', '8', '--gamma1', '0.01',
                               '--gamma3', '10', '-N', '200', '--seed', '7'])
        assert config.subcommand == 'ensemble'
        assert config.sizes == (8,)
        assert config.gamma1 == (0.01,)
        assert config.gamma2 == 1.0
        assert config.trajectories == 200
        assert config.seed == 7
        plan = config.get_plan()
        assert plan.gamma3_list == (10.0,)
        assert plan.seed == 7

    def test_negative_rate(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['ensemble', '--gamma1', '-0.5', '--seed', '1'])
        assert info.value.key == 'gamma1'

    def test_malformed_number(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['ensemble', '--gamma2', 'fast', '--seed', '1'])
        assert info.value.key == 'gamma2'

    def test_enum(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['ensemble', '--field-update', 'sideways',
                          '--seed', '1'])
        assert info.value.key == 'field_update'
        assert 'Choices' in str(info.value)

    def test_file_and_flags(self, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("trajectories: 100\nseed: 3\ndepth_floor: 1e-4\n")
        config = parse_config(['ensemble', '--config', str(path)])
        assert config.trajectories == 100
        assert config.depth_floor == 1e-4
        config = parse_config(['ensemble', '--config', str(path),
                               '-N', '500'])
        assert config.trajectories == 500
        assert config.seed == 3

    def test_json_file(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text('{"subcommand": "ensemble", "seed": 9, '
                        '"sizes": [4, 6]}')
        config = parse_config([], config_file=str(path))
        assert config.sizes == (4, 6)
        assert config.seed == 9

    def test_unknown_file_key(self, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("seed: 3\nworkerz: 4\n")
        with pytest.raises(ConfigError) as info:
            parse_config(['ensemble', '--config', str(path)])
        assert info.value.key == 'workerz'

    def test_missing_subcommand(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['--seed', '1'])
        assert info.value.key == 'subcommand'

    def test_missing_seed(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['ensemble'])
        assert info.value.key == 'seed'
        config = parse_config(['selftest'])
        assert config.get_seed() == SELFTEST_SEED

    def test_threshold_sizes(self):
        with pytest.raises(ConfigError) as info:
            parse_config(['threshold', '-L', '8', '--seed', '1'])
        assert info.value.key == 'sizes'

    def test_bad_option(self):
        with pytest.raises(ConfigError):
            parse_config(['ensemble', '--bogus'])
        with pytest.raises(ConfigError):
            parse_config(['ensemble', 'threshold', '--seed', '1'])


class TestEchoConfig:
    def setup_method(self):
        self.config = parse_config(['threshold', '-L', '8,16', '--seed', '5',
                                    '--gamma3', '1,10', '--depth-floor',
                                    '0.0005', '-o', 'rows.csv'])

    def test_round_trip(self, tmp_path):
        path = tmp_path / 'echo.yaml'
        path.write_text(echo_config(self.config))
        assert parse_config(['--config', str(path)]) == self.config

    def test_order(self):
        keys = [line.split(':')[0]
                for line in echo_config(self.config).splitlines()
                if line and not line.startswith('#')]
        assert keys == load_schema().get_child_keys()

    def test_comments(self):
        text = echo_config(self.config)
        assert '# Subcommand: ' in text
        assert 'Choices: "sync", "async"' in text
        assert 'seed: 5\n' in text
