import functools
import os
import re

cache = functools.lru_cache(None)


@cache
def template_environment():
    from jinja2 import Environment, PackageLoader

    loader = PackageLoader('pathpack', os.path.join('data', 'templates'))

    return Environment(
        loader = loader,
        keep_trailing_newline = True,
        trim_blocks = True,
        lstrip_blocks = True,
    )


def get_template(name):
    return template_environment().get_template(name)


space_re = re.compile(r'\s+')

def split_fields(line):
    return [ field for field in space_re.split(line.strip()) if field ]
