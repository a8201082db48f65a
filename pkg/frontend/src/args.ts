/** Tiny flag parser: --name value pairs plus boolean switches. */

export class UsageError extends Error {}

export function parseArgs(
  argv: string[],
  valueFlags: string[],
  switches: string[] = [],
): Map<string, string | true> {
  const out = new Map<string, string | true>()
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]
    if (!arg.startsWith('--')) {
      throw new UsageError(`unexpected argument '${arg}'`)
    }
    const name = arg.slice(2)
    if (switches.includes(name)) {
      out.set(name, true)
    } else if (valueFlags.includes(name)) {
      const value = argv[++i]
      if (value === undefined) {
        throw new UsageError(`flag --${name} needs a value`)
      }
      out.set(name, value)
    } else {
      throw new UsageError(`unknown flag --${name}`)
    }
  }
  return out
}

export function requireFlag(flags: Map<string, string | true>, name: string): string {
  const v = flags.get(name)
  if (typeof v !== 'string') {
    throw new UsageError(`flag --${name} is required`)
  }
  return v
}
