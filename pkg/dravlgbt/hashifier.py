"""
.. module:: hashifier.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: Encapsulates hashing of dravlgbt inputs & artifacts.

.. moduleauthor:: dravlgbt developers


"""
import json
import hashlib



def hashify(metadata):
    """Returns a hash derived from a JSON serializable blob (config, manifest ...).

    :param dict metadata: Blob to be hashed.

    """
    metadata_as_text = json.dumps(metadata, sort_keys=True)

    return hashlib.md5(metadata_as_text.encode('utf-8')).hexdigest()


def hashify_file(fpath):
    """Returns a hash derived from a file's bytes.

    :param str fpath: Path to a file.

    """
    hash_id = hashlib.md5()
    with open(fpath, 'rb') as fstream:
        for chunk in iter(lambda: fstream.read(1 << 16), b''):
            hash_id.update(chunk)

    return hash_id.hexdigest()
